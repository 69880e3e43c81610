#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cliquesh/var_mask.hpp"

namespace cliquesh {

/// Clause-local variable: an index into the owning clause's name table.
struct Var {
    std::uint32_t id = 0;
    friend constexpr auto operator<=>(Var, Var) = default;
};

/// A variable or a compound term; atoms and numbers are arity-0 compounds.
/// Predicate atoms and data terms share this representation.
class Term {
  public:
    Term() = default;

    static Term variable(Var v);
    static Term variable(std::uint32_t id) { return variable(Var{id}); }
    static Term compound(std::string functor, std::vector<Term> args);
    static Term atom(std::string name) { return compound(std::move(name), {}); }

    [[nodiscard]] bool is_var() const { return is_var_; }
    [[nodiscard]] Var var() const { return var_; }
    [[nodiscard]] const std::string& functor() const { return functor_; }
    [[nodiscard]] std::size_t arity() const { return args_.size(); }
    [[nodiscard]] const std::vector<Term>& args() const { return args_; }
    [[nodiscard]] bool is_atom() const { return !is_var_ && args_.empty(); }

    friend bool operator==(const Term&, const Term&) = default;

  private:
    bool is_var_ = false;
    Var var_{};
    std::string functor_;
    std::vector<Term> args_;
};

/// Thrown when a term mentions a variable index that does not fit a VarMask.
class TooManyVariables : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Set of variables occurring in t.
VarMask vars_of(const Term& t);
VarMask vars_of(const Term& s, const Term& t);
/// Variables in order of first occurrence (left to right, depth first).
std::vector<Var> vars_in_order(const Term& t);
/// True if no variable occurs twice in t.
bool is_linear(const Term& t);
std::size_t max_var_id_plus_one(const Term& t);

/// Applies a variable renaming; variables absent from the map are kept.
Term rename_vars(const Term& t, const std::map<std::uint32_t, std::uint32_t>& mapping);

using VarNames = std::vector<std::string>;

/// Prolog-like rendering; variables use `names` when available, else `_<id>`.
std::string to_string(const Term& t, const VarNames& names = {});

struct Clause {
    Term head;
    std::vector<Term> body;
    VarNames var_names; ///< indexed by Var::id

    [[nodiscard]] std::size_t num_vars() const { return var_names.size(); }
    [[nodiscard]] VarMask head_vars() const { return vars_of(head); }
    [[nodiscard]] VarMask all_vars() const;
};

struct PredicateKey {
    std::string name;
    std::size_t arity = 0;
    friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
    [[nodiscard]] std::string to_string() const { return name + "/" + std::to_string(arity); }
};

PredicateKey key_of(const Term& atom);

enum class Mode { ground, free };

struct ModeAnnotation {
    Mode mode;
    Var var;
    friend bool operator==(const ModeAnnotation&, const ModeAnnotation&) = default;
};

/// `:- entry Goal : Annotations.`
struct EntryDecl {
    Term goal;
    std::vector<ModeAnnotation> annotations;
    VarNames var_names;
};

struct Program {
    std::map<PredicateKey, std::vector<Clause>> predicates;
    std::vector<EntryDecl> entries;

    [[nodiscard]] const std::vector<Clause>* clauses_of(const PredicateKey& key) const;
    [[nodiscard]] std::size_t clause_count() const;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, std::size_t line, std::size_t column);
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Builtins recognised by the analyzer (used to validate entry declarations).
bool is_builtin(const PredicateKey& key);

Program parse_program(std::string_view source);
/// Parses a single term; variables are interned into `names`.
Term parse_term(std::string_view source, VarNames& names);

/// One solved binding x = t.
struct Binding {
    Var var;
    Term term;
};

/// Solved form: every left-hand variable occurs once as a left-hand side and in
/// no right-hand side.
using EquationSet = std::vector<Binding>;

/// Most general unifier of t1 = t2 in solved form, or nullopt on clash or
/// occur-check failure.
std::optional<EquationSet> solve(const Term& t1, const Term& t2);

Term apply(const EquationSet& eqs, const Term& t);

/// Renames every clause variable to an id outside `taken`; the name table grows
/// so the result stays self-describing. `taken` indices must be < 64.
Clause rename_apart(const Clause& c, VarMask taken);

} // namespace cliquesh
