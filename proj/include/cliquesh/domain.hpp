#pragma once

// One abstract substitution type over the four sharing domains plus Bottom,
// with operations that dispatch on the active alternative. Both arguments of a
// binary operation must come from the same domain (or be Bottom).

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cliquesh/freeness.hpp"
#include "cliquesh/normalize.hpp"

namespace cliquesh {

enum class DomainKind { sharing, sharing_freeness, clique_sharing, clique_sharing_freeness };

std::string_view domain_name(DomainKind k);
std::optional<DomainKind> parse_domain(std::string_view name);
constexpr bool has_cliques(DomainKind k) {
    return k == DomainKind::clique_sharing || k == DomainKind::clique_sharing_freeness;
}
constexpr bool has_freeness(DomainKind k) {
    return k == DomainKind::sharing_freeness || k == DomainKind::clique_sharing_freeness;
}

/// Unreachable state. Distinct from an empty sharing set, which means every
/// variable is ground.
struct Bottom {
    VarMask domain = 0;
    friend bool operator==(const Bottom&, const Bottom&) = default;
};

class AbstractSubstitution {
  public:
    using Value = std::variant<Bottom, SharingSet, SharingFreeness, CliquePair, CliqueSharingFreeness>;

    AbstractSubstitution() = default;
    AbstractSubstitution(Bottom b) : value_(b) {}
    AbstractSubstitution(SharingSet s) : value_(std::move(s)) {}
    AbstractSubstitution(SharingFreeness s) : value_(std::move(s)) {}
    AbstractSubstitution(CliquePair p) : value_(std::move(p)) {}
    AbstractSubstitution(CliqueSharingFreeness s) : value_(std::move(s)) {}

    static AbstractSubstitution bottom(VarMask domain = 0) { return Bottom{domain}; }

    [[nodiscard]] bool is_bottom() const { return std::holds_alternative<Bottom>(value_); }
    [[nodiscard]] VarMask domain() const;
    [[nodiscard]] const Value& value() const { return value_; }
    template <typename T>
    [[nodiscard]] const T& as() const {
        return std::get<T>(value_);
    }
    template <typename T>
    [[nodiscard]] bool holds() const {
        return std::holds_alternative<T>(value_);
    }

    friend bool operator==(const AbstractSubstitution&, const AbstractSubstitution&) = default;

  private:
    Value value_;
};

namespace domain {

/// Call pattern for an entry: worst-case sharing among the non-ground
/// variables, with the annotated variables free (freeness domains only).
AbstractSubstitution initial_call(DomainKind kind, VarMask vars, VarMask ground, VarMask free);
/// Worst case over vars: every subset may share, nothing known free.
AbstractSubstitution top(DomainKind kind, VarMask vars);

AbstractSubstitution project(const AbstractSubstitution& a, VarMask vars);
/// New variables enter as independent (and free, in freeness domains).
AbstractSubstitution augment(const AbstractSubstitution& a, VarMask vars);
AbstractSubstitution amgu(const AbstractSubstitution& a, Var x, const Term& t);
/// Marks vars as ground.
AbstractSubstitution ground(const AbstractSubstitution& a, VarMask vars);
AbstractSubstitution extend(const AbstractSubstitution& call, VarMask g_vars, const AbstractSubstitution& prime,
                            const ExtendOptions& opts = {});
AbstractSubstitution lub(const AbstractSubstitution& a, const AbstractSubstitution& b);
/// The domain's ordering check (sufficient only, for clique domains).
bool leq(const AbstractSubstitution& a, const AbstractSubstitution& b);
/// Exact semantic ordering; equals leq outside clique domains.
bool leq_exact(const AbstractSubstitution& a, const AbstractSubstitution& b);
AbstractSubstitution remap(const AbstractSubstitution& a, std::span<const int> mapping);
/// Clique detection per policy; identity outside clique domains.
AbstractSubstitution normalize(const AbstractSubstitution& a, const NormalizePolicy& policy);

struct UnifyOptions {
    /// Treat t1's variables as free and unify with the freeness-aware amgu,
    /// discarding the freeness component afterwards (sharing domains only).
    bool free_t1 = false;
};

/// project(t1, Amgu(solve(t1 = t2), augment(t1, a))). t1's variables must be
/// fresh with respect to a; a failed solve gives Bottom.
AbstractSubstitution unify(const AbstractSubstitution& a, const Term& t1, const Term& t2, UnifyOptions opts = {});
/// Folds amgu over a solved equation set.
AbstractSubstitution amgu_all(const AbstractSubstitution& a, const EquationSet& eqs);

/// Plain sharing view: the expansion for clique domains.
SharingSet sharing_view(const AbstractSubstitution& a);
/// Free variables; 0 outside freeness domains.
FreenessSet freeness_of(const AbstractSubstitution& a);

struct Measure {
    std::uint64_t groups = 0;     ///< sharing groups represented (cliques expanded)
    std::uint64_t worst_case = 0; ///< 2^n - 1 for the n domain variables (saturating)
    std::size_t cliques = 0;
    std::size_t representation = 0; ///< stored cliques + groups
};
Measure measure(const AbstractSubstitution& a);

std::string to_string(const AbstractSubstitution& a, const VarNames& names = {});

} // namespace domain
} // namespace cliquesh
