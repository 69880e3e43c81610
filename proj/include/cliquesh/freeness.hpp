#pragma once

#include "cliquesh/clique.hpp"

namespace cliquesh {

/// Variables known to be unbound at run time.
using FreenessSet = VarMask;

/// Sharing+Freeness (SHF).
struct SharingFreeness {
    SharingSet sh;
    FreenessSet f = 0;

    [[nodiscard]] VarMask domain() const { return sh.domain(); }
    friend bool operator==(const SharingFreeness&, const SharingFreeness&) = default;
};

/// Clique-Sharing+Freeness (SHF^w).
struct CliqueSharingFreeness {
    CliquePair p;
    FreenessSet f = 0;

    [[nodiscard]] VarMask domain() const { return p.domain(); }
    friend bool operator==(const CliqueSharingFreeness&, const CliqueSharingFreeness&) = default;
};

/// Drops from f every variable that occurs in no group or clique (it is ground).
SharingFreeness restore_consistency(SharingFreeness s);
CliqueSharingFreeness restore_consistency(CliqueSharingFreeness s);

/// Linearity test using the per-group form: t is linear and every relevant
/// group or clique meets t's variables exactly once.
bool lin_s(const Term& t, const CliquePair& p);
/// The pairwise form: t linear and, for distinct y, z in t, the groups and
/// cliques relevant to y and to z are disjoint.
bool lin_s_pairwise(const Term& t, const CliquePair& p);

CliquePair amgu_sff(Var x, VarMask t_vars, const CliquePair& p);
CliquePair amgu_sfl(Var x, VarMask t_vars, const CliquePair& p);

enum class AmguCase { sff, sfl, s };
/// Which sharing update amgu_sf selects for x = t.
AmguCase amgu_sf_case(Var x, const Term& t, const CliqueSharingFreeness& s);

CliqueSharingFreeness amgu_sf(Var x, const Term& t, const CliqueSharingFreeness& s);
SharingFreeness amgu_f(Var x, const Term& t, const SharingFreeness& s);

SharingFreeness project_f(VarMask vars, const SharingFreeness& s);
SharingFreeness augment_f(VarMask vars, const SharingFreeness& s);
SharingFreeness extend_f(const SharingFreeness& call, VarMask g_vars, const SharingFreeness& prime);
SharingFreeness extend_f(const SharingFreeness& call, const Term& g, const SharingFreeness& prime);
SharingFreeness ground_f(VarMask vars, const SharingFreeness& s);
SharingFreeness lub_f(const SharingFreeness& a, const SharingFreeness& b);
bool leq_f(const SharingFreeness& a, const SharingFreeness& b);

CliqueSharingFreeness project_sf(VarMask vars, const CliqueSharingFreeness& s);
CliqueSharingFreeness project_sf(const Term& g, const CliqueSharingFreeness& s);
CliqueSharingFreeness augment_sf(VarMask vars, const CliqueSharingFreeness& s);
CliqueSharingFreeness augment_sf(const Term& g, const CliqueSharingFreeness& s);
CliqueSharingFreeness extend_sf(const CliqueSharingFreeness& call, VarMask g_vars, const CliqueSharingFreeness& prime,
                                const ExtendOptions& opts = {});
CliqueSharingFreeness extend_sf(const CliqueSharingFreeness& call, const Term& g, const CliqueSharingFreeness& prime,
                                const ExtendOptions& opts = {});
CliqueSharingFreeness ground_sf(VarMask vars, const CliqueSharingFreeness& s);
CliqueSharingFreeness lub_sf(const CliqueSharingFreeness& a, const CliqueSharingFreeness& b);
bool leq_sf(const CliqueSharingFreeness& a, const CliqueSharingFreeness& b);

SharingFreeness remap(const SharingFreeness& s, std::span<const int> mapping);
CliqueSharingFreeness remap(const CliqueSharingFreeness& s, std::span<const int> mapping);

/// `({xy}, free: {x})`
std::string to_string(const SharingFreeness& s, const VarNames& names = {});
/// `(({xy},{z}), free: {x})`
std::string to_string(const CliqueSharingFreeness& s, const VarNames& names = {});
std::string freeness_to_string(FreenessSet f, const VarNames& names = {});

} // namespace cliquesh
