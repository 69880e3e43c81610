#pragma once

// Top-down multivariant tabulation over any of the four domains.
//
// Call patterns are keyed by the goal with its variables renamed by first
// occurrence (0..k-1) together with the projected call substitution renamed
// the same way. Recursive patterns start at Bottom and are re-evaluated until
// their success stops growing.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliquesh/domain.hpp"

namespace cliquesh {

/// call2entry(proj, goal, head) = unify(proj, head, goal). With free_head the
/// head variables enter as free and the freeness-aware amgu is used (sharing
/// domains without their own freeness component).
AbstractSubstitution call2entry(const AbstractSubstitution& proj, const Term& goal, const Term& head,
                                bool free_head = false);
/// exit2succ(exit, goal, head) = unify(exit, goal, head).
AbstractSubstitution exit2succ(const AbstractSubstitution& exitp, const Term& goal, const Term& head);

class AnalysisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Diagnostic {
    enum class Severity { warning, error } severity = Severity::warning;
    std::string message;
};

/// Transfer function for a builtin atom. `atom` must satisfy is_builtin.
AbstractSubstitution builtin_transfer(const Term& atom, const AbstractSubstitution& asub);

struct AnalysisOptions {
    DomainKind domain = DomainKind::sharing;
    NormalizePolicy policy;
    bool free_head_call2entry = false;
    /// Calls to predicates with no clauses: top with a warning, or an error.
    bool unknown_predicates_are_errors = false;
    /// Per-predicate variant cap; beyond it call patterns are generalized to
    /// p(A1..An) and lub-merged into one variant. 0 = uncapped.
    std::size_t max_variants = 0;
    ExtendOptions extend;
    /// Cross-check domain operations against the oracle while analyzing.
    bool verify = false;
    /// Guard against runaway iteration (never reached on finite lattices).
    std::size_t max_rounds = 100000;
};

struct VerifyStats {
    std::uint64_t checks = 0;
    std::uint64_t skipped = 0; ///< instances too large to enumerate
    std::vector<std::string> failures;
};

struct Variant {
    PredicateKey pred;
    Term goal; ///< canonical goal; variables 0..k-1
    VarNames names;
    AbstractSubstitution call;
    AbstractSubstitution success;
    bool generalized = false; ///< lub-merged pattern created by the variant cap
    bool reached = false;     ///< used by the final round
    std::uint64_t evaluations = 0;
};

struct PointKey {
    std::size_t variant = 0;
    std::size_t clause = 0;
    std::size_t point = 0; ///< 0 = clause entry, i = after body atom i
    friend auto operator<=>(const PointKey&, const PointKey&) = default;
};

struct PointRecord {
    PredicateKey pred;
    VarMask clause_vars = 0;
    const VarNames* names = nullptr; ///< owned by the analyzed Program
    AbstractSubstitution value;
};

struct EntryOutcome {
    Term goal;
    VarNames names;
    AbstractSubstitution call;
    AbstractSubstitution success;
};

struct AnalysisTable {
    DomainKind domain = DomainKind::sharing;
    std::vector<Variant> variants;
    std::map<PointKey, PointRecord> points;
    std::vector<EntryOutcome> entries;
    std::vector<Diagnostic> diagnostics;
    std::size_t rounds = 0;
    std::uint64_t clause_evaluations = 0;
    std::uint64_t table_updates = 0;
    VerifyStats verify;

    [[nodiscard]] bool has_errors() const;
};

/// Analyzes every entry declaration of `program`. The Program must outlive the
/// returned table (point records reference its name tables).
AnalysisTable analyze(const Program& program, const AnalysisOptions& opts);
AnalysisTable analyze(const Program& program, const std::vector<EntryDecl>& entries, const AnalysisOptions& opts);

/// Folds the body left to right starting from `entry`, with every call
/// analyzed against `program` from scratch (no shared table).
AbstractSubstitution entry2exit(const Program& program, const std::vector<Term>& body,
                                const AbstractSubstitution& entry, const AnalysisOptions& opts);

/// Per-point lub over all reached variants, keyed by (predicate, clause, point).
struct MergedPoint {
    PredicateKey pred;
    std::size_t clause = 0;
    std::size_t point = 0;
    friend auto operator<=>(const MergedPoint&, const MergedPoint&) = default;
};
std::map<MergedPoint, AbstractSubstitution> merge_points(const AnalysisTable& table);

/// Checks expand(clique) ⊇ plain and f(clique) ⊆ f(plain) at every point the
/// plain run reaches, and likewise for entry successes. Returns violations.
std::vector<std::string> compare_soundness(const AnalysisTable& clique_run, const AnalysisTable& plain_run);

} // namespace cliquesh
