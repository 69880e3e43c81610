#pragma once

// Reference machinery: clique expansion and literal, unoptimized transcriptions
// of the set-sharing formulas. Shipped in the library so the CLI's --verify
// mode can cross-check a run. Everything here enumerates and is only meant for
// small domains.

#include <cstdint>

#include "cliquesh/clique.hpp"
#include "cliquesh/freeness.hpp"

namespace cliquesh::oracle {

inline constexpr unsigned kMaxExpandCliqueVars = 20;
inline constexpr std::size_t kMaxStarInput = 16;

/// ⇓cl ∪ sh. Throws ContractError for cliques above kMaxExpandCliqueVars.
SharingSet expand(const CliquePair& p);
SharingFreeness expand(const CliqueSharingFreeness& s);

SharingSet ref_bin(const SharingSet& a, const SharingSet& b);
/// Unions of every nonempty subfamily. Throws beyond kMaxStarInput groups.
SharingSet ref_star(const SharingSet& s);
SharingSet ref_amgu(Var x, VarMask t_vars, const SharingSet& sh);
SharingSet ref_project(VarMask vars, const SharingSet& sh);
SharingSet ref_extend(const SharingSet& call, VarMask g_vars, const SharingSet& prime);
SharingFreeness ref_extend_f(const SharingFreeness& call, VarMask g_vars, const SharingFreeness& prime);
/// The extend^f formula as written, before ground variables are dropped from
/// f. The clique-freeness extend is bounded by this f, not by the swept one.
SharingFreeness ref_extend_f_raw(const SharingFreeness& call, VarMask g_vars, const SharingFreeness& prime);
/// |℘⁰(s) ∩ ⇓cl| by enumerating the subsets of s.
std::uint64_t ref_count_covered(VarMask s, const CliqueSet& cl);

/// True when some family ℘⁰(c), |c| >= 2, lies inside ⇓cl ∪ sh while one of its
/// members is still listed in sh (the pair is not normalized).
bool has_undetected_powerset(const CliquePair& p);

} // namespace cliquesh::oracle
