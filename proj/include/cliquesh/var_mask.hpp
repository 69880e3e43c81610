#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cliquesh {

/// A set of clause-local variables, one bit per variable index.
using VarMask = std::uint64_t;

inline constexpr unsigned kMaxVars = 64;

constexpr VarMask var_bit(unsigned index) { return VarMask{1} << index; }

constexpr bool is_subset(VarMask a, VarMask b) { return (a & ~b) == 0; }
constexpr bool meets(VarMask a, VarMask b) { return (a & b) != 0; }
constexpr unsigned cardinality(VarMask a) { return static_cast<unsigned>(std::popcount(a)); }

/// Calls fn(index) for every set bit, lowest first.
template <typename Fn>
constexpr void for_each_var(VarMask m, Fn&& fn) {
    while (m != 0) {
        fn(static_cast<unsigned>(std::countr_zero(m)));
        m &= m - 1;
    }
}

/// Nonempty submasks of m, in decreasing numeric order.
template <typename Fn>
constexpr void for_each_nonempty_submask(VarMask m, Fn&& fn) {
    for (VarMask sub = m; sub != 0; sub = (sub - 1) & m) fn(sub);
}

inline std::vector<unsigned> var_indices(VarMask m) {
    std::vector<unsigned> out;
    out.reserve(cardinality(m));
    for_each_var(m, [&](unsigned i) { out.push_back(i); });
    return out;
}

} // namespace cliquesh
