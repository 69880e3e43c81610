#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliquesh/syntax.hpp"
#include "cliquesh/var_mask.hpp"

namespace cliquesh {

/// Raised when an operation's precondition is violated by the caller.
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A set of nonempty variable groups over a variable domain. Used both for
/// sharing sets (SH) and for clique sets (CL), which have the same shape.
/// Groups are kept sorted by mask value and unique.
class SharingSet {
  public:
    SharingSet() = default;
    explicit SharingSet(VarMask domain) : domain_(domain) {}
    /// Canonicalizes `groups`; throws ContractError on an empty group or a
    /// group outside the domain.
    SharingSet(VarMask domain, std::vector<VarMask> groups);
    SharingSet(VarMask domain, std::initializer_list<VarMask> groups)
        : SharingSet(domain, std::vector<VarMask>(groups)) {}

    /// Skips validation; `groups` must already be nonempty masks within domain.
    static SharingSet from_unsorted(VarMask domain, std::vector<VarMask> groups);

    [[nodiscard]] VarMask domain() const { return domain_; }
    [[nodiscard]] std::span<const VarMask> groups() const { return groups_; }
    [[nodiscard]] std::size_t size() const { return groups_.size(); }
    [[nodiscard]] bool empty() const { return groups_.empty(); }
    [[nodiscard]] bool contains(VarMask g) const;
    /// Union of all groups: the variables that may be non-ground.
    [[nodiscard]] VarMask support() const;

    auto begin() const { return groups_.begin(); }
    auto end() const { return groups_.end(); }

    void set_domain(VarMask d);

    friend bool operator==(const SharingSet&, const SharingSet&) = default;

  private:
    VarMask domain_ = 0;
    std::vector<VarMask> groups_;
};

/// { g1 ∪ g2 | g1 ∈ s1, g2 ∈ s2 }
SharingSet bin(const SharingSet& s1, const SharingSet& s2);
/// Closure under pairwise union.
SharingSet star(const SharingSet& s);
/// Groups meeting `vars`.
SharingSet rel(VarMask vars, const SharingSet& sh);
SharingSet rel(const Term& t, const SharingSet& sh);
/// Groups disjoint from `vars`.
SharingSet irrel(VarMask vars, const SharingSet& sh);
SharingSet irrel(const Term& t, const SharingSet& sh);

struct RelSplit {
    SharingSet relevant;
    SharingSet irrelevant;
};
RelSplit split_rel(VarMask vars, const SharingSet& sh);

SharingSet set_union(const SharingSet& a, const SharingSet& b);

/// Abstract unification for the equation x = t over plain sharing.
SharingSet amgu(Var x, const Term& t, const SharingSet& sh);
SharingSet amgu(Var x, VarMask t_vars, const SharingSet& sh);

SharingSet project(VarMask vars, const SharingSet& sh);
SharingSet project(const Term& g, const SharingSet& sh);
/// Adds each variable of `vars` as a singleton group; the variables must be
/// fresh with respect to sh's domain.
SharingSet augment(VarMask vars, const SharingSet& sh);
SharingSet augment(const Term& g, const SharingSet& sh);
SharingSet extend(const SharingSet& call, VarMask g_vars, const SharingSet& prime);
SharingSet extend(const SharingSet& call, const Term& g, const SharingSet& prime);

/// Drops every group meeting `vars` (those variables became ground).
SharingSet ground(VarMask vars, const SharingSet& sh);

SharingSet lub(const SharingSet& a, const SharingSet& b);
bool leq(const SharingSet& a, const SharingSet& b);
/// All nonempty subsets of vars. Throws ContractError beyond 24 variables.
SharingSet top(VarMask vars);

/// Renames variable indices: bit i of every mask moves to bit mapping[i].
/// Variables without a mapping entry (-1) must not occur.
VarMask remap(VarMask m, std::span<const int> mapping);
SharingSet remap(const SharingSet& s, std::span<const int> mapping);

/// Default display names x, y, z, u, v, w, then v6, v7, ...
std::string default_var_name(unsigned index);
std::string group_to_string(VarMask g, const VarNames& names = {});
/// `{x, xy, xyz}`: groups ordered by their sorted variable index lists.
std::string to_string(const SharingSet& s, const VarNames& names = {});

} // namespace cliquesh
