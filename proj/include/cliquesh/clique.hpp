#pragma once

#include "cliquesh/sharing.hpp"

namespace cliquesh {

/// Clique set: each member C stands for every nonempty subset of C.
using CliqueSet = SharingSet;

/// (cl, sh) over one variable domain; represents ⇓cl ∪ sh.
struct CliquePair {
    CliqueSet cl;
    SharingSet sh;

    CliquePair() = default;
    explicit CliquePair(VarMask domain) : cl(domain), sh(domain) {}
    CliquePair(CliqueSet cliques, SharingSet sharing);

    [[nodiscard]] VarMask domain() const { return sh.domain(); }
    /// Variables that may be non-ground.
    [[nodiscard]] VarMask support() const { return cl.support() | sh.support(); }

    friend bool operator==(const CliquePair&, const CliquePair&) = default;
};

/// { C \ S | C ∈ cl } \ {∅}
CliqueSet rel_bar(VarMask vars, const CliqueSet& cl);

/// Keeps only maximal cliques.
CliqueSet regularize(const CliqueSet& cl);

CliquePair amgu_s(Var x, const Term& t, const CliquePair& p);
CliquePair amgu_s(Var x, VarMask t_vars, const CliquePair& p);

CliquePair project_s(VarMask vars, const CliquePair& p);
CliquePair project_s(const Term& g, const CliquePair& p);
CliquePair augment_s(VarMask vars, const CliquePair& p);
CliquePair augment_s(const Term& g, const CliquePair& p);
CliquePair ground_s(VarMask vars, const CliquePair& p);

struct ExtendOptions {
    /// Cliques of the worst-case pair larger than this are not enumerated by
    /// clsh; they are carried into the result's clique component instead.
    unsigned clsh_clique_limit = 24;
};

/// Worst-case success pair for g: normalize((cl_g* ∪ (cl_g* bin sh_g*), sh_g*)).
CliquePair extend_worstcase(const CliquePair& call, VarMask g_vars);
CliquePair extend_worstcase(const CliquePair& call, const Term& g);

SharingSet extsh(const SharingSet& sh1, VarMask g_vars, const SharingSet& sh2, const SharingSet& sh_prime);
CliqueSet extcl(const CliqueSet& cl1, VarMask g_vars, const CliqueSet& cl2, const CliqueSet& cl_prime);

struct ClshResult {
    SharingSet groups;
    /// Covering cliques emitted instead of enumerating oversized cliques.
    CliqueSet spilled;
};
ClshResult clsh(const CliqueSet& cl_prime, VarMask g_vars, const SharingSet& sh2, unsigned clique_limit = 24);
SharingSet shcl(const SharingSet& sh_prime, VarMask g_vars, const CliqueSet& cl2);

/// Intermediate values of one extend_s evaluation, exposed for inspection.
struct ExtendTrace {
    CliquePair worst_case;
    SharingSet extsh;
    CliqueSet extcl;
    SharingSet clsh;
    SharingSet shcl;
    CliquePair unregularized;
};

/// `prime` should already be normalized.
CliquePair extend_s(const CliquePair& call, VarMask g_vars, const CliquePair& prime, const ExtendOptions& opts = {},
                    ExtendTrace* trace = nullptr);
CliquePair extend_s(const CliquePair& call, const Term& g, const CliquePair& prime, const ExtendOptions& opts = {});

/// Componentwise union, regularized.
CliquePair lub_s(const CliquePair& a, const CliquePair& b);
/// Sufficient check for ⇓a ⊆ ⇓b: every clique of a lies in a clique of b, and
/// every group of a is in b.sh or inside a clique of b.
bool leq_s(const CliquePair& a, const CliquePair& b);
/// Exact containment of the represented sharing without expanding cliques.
bool leq_exact_s(const CliquePair& a, const CliquePair& b);
CliquePair top_s(VarMask vars);

CliquePair remap(const CliquePair& p, std::span<const int> mapping);

/// `({xyz}, {uv, u})`
std::string to_string(const CliquePair& p, const VarNames& names = {});

} // namespace cliquesh
