#include <cassert>

#include "cliquesh/freeness.hpp"

namespace cliquesh {
namespace {

struct Relevant {
    SharingSet cl_x, cl_t, sh_x, sh_t;
    CliqueSet cl_rest;  // rel_bar(x̂t, cl)
    SharingSet sh_rest; // irrel(x̂t, sh)
};

Relevant relevant_parts(Var x, VarMask t_vars, const CliquePair& p) {
    const VarMask xm = var_bit(x.id);
    const VarMask xt = xm | t_vars;
    if (!is_subset(xt, p.domain())) throw ContractError("amgu: variables outside the domain");
    const RelSplit cl_split = split_rel(xt, p.cl);
    const RelSplit sh_split = split_rel(xt, p.sh);
    return Relevant{rel(xm, cl_split.relevant), rel(t_vars, cl_split.relevant), rel(xm, sh_split.relevant),
                    rel(t_vars, sh_split.relevant), rel_bar(xt, p.cl), sh_split.irrelevant};
}

// {∪S} as a set of groups; a union of nothing contributes no group.
SharingSet singleton_union(VarMask u, VarMask domain) {
    return u == 0 ? SharingSet(domain) : SharingSet(domain, {u});
}

bool term_is_free_var(const Term& t, FreenessSet f) { return t.is_var() && meets(f, var_bit(t.var().id)); }

FreenessSet updated_freeness(bool x_free, bool t_free, const Relevant& r, FreenessSet f) {
    const VarMask x_side = r.sh_x.support() | r.cl_x.support();
    const VarMask t_side = r.sh_t.support() | r.cl_t.support();
    if (x_free && t_free) return f;
    if (x_free) return f & ~x_side;
    if (t_free) return f & ~t_side;
    return f & ~(x_side | t_side);
}

} // namespace

SharingFreeness restore_consistency(SharingFreeness s) {
    s.f &= s.sh.support();
    return s;
}

CliqueSharingFreeness restore_consistency(CliqueSharingFreeness s) {
    s.f &= s.p.support();
    return s;
}

bool lin_s(const Term& t, const CliquePair& p) {
    if (!is_linear(t)) return false;
    const VarMask tv = vars_of(t);
    auto once = [&](const SharingSet& s) {
        for (VarMask g : s) {
            if (meets(g, tv) && cardinality(g & tv) != 1) return false;
        }
        return true;
    };
    return once(p.sh) && once(p.cl);
}

bool lin_s_pairwise(const Term& t, const CliquePair& p) {
    if (!is_linear(t)) return false;
    const std::vector<unsigned> vars = var_indices(vars_of(t));
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            const VarMask y = var_bit(vars[i]);
            const VarMask z = var_bit(vars[j]);
            // sh_y ∩ sh_z = ∅ and cl_y ∩ cl_z = ∅: no group holds both
            for (const SharingSet* s : {&p.sh, &p.cl}) {
                for (VarMask g : *s) {
                    if (meets(g, y) && meets(g, z)) return false;
                }
            }
        }
    }
    return true;
}

CliquePair amgu_sff(Var x, VarMask t_vars, const CliquePair& p) {
    const Relevant r = relevant_parts(x, t_vars, p);
    CliqueSet cl = set_union(r.cl_rest, set_union(bin(set_union(r.cl_x, r.sh_x), r.cl_t), bin(r.cl_x, r.sh_t)));
    SharingSet sh = set_union(r.sh_rest, bin(r.sh_x, r.sh_t));
    return CliquePair(regularize(cl), std::move(sh));
}

CliquePair amgu_sfl(Var x, VarMask t_vars, const CliquePair& p) {
    const Relevant r = relevant_parts(x, t_vars, p);
    const VarMask d = p.domain();
    if (r.cl_t.empty()) {
        CliqueSet cl = set_union(r.cl_rest, bin(r.cl_x, singleton_union(r.sh_t.support(), d)));
        SharingSet sh = set_union(r.sh_rest, bin(r.sh_x, star(r.sh_t)));
        return CliquePair(regularize(cl), std::move(sh));
    }
    const SharingSet t_union = singleton_union(r.cl_t.support() | r.sh_t.support(), d);
    CliqueSet cl = set_union(r.cl_rest, bin(set_union(r.cl_x, r.sh_x), t_union));
    return CliquePair(regularize(cl), r.sh_rest);
}

AmguCase amgu_sf_case(Var x, const Term& t, const CliqueSharingFreeness& s) {
    if (meets(s.f, var_bit(x.id)) || term_is_free_var(t, s.f)) return AmguCase::sff;
    const bool linear = lin_s(t, s.p);
    assert(linear == lin_s_pairwise(t, s.p));
    return linear ? AmguCase::sfl : AmguCase::s;
}

CliqueSharingFreeness amgu_sf(Var x, const Term& t, const CliqueSharingFreeness& s) {
    const VarMask tv = vars_of(t);
    const bool x_free = meets(s.f, var_bit(x.id));
    const bool t_free = term_is_free_var(t, s.f);
    CliqueSharingFreeness out;
    switch (amgu_sf_case(x, t, s)) {
    case AmguCase::sff:
        out.p = amgu_sff(x, tv, s.p);
        break;
    case AmguCase::sfl:
        out.p = amgu_sfl(x, tv, s.p);
        break;
    case AmguCase::s:
        out.p = amgu_s(x, tv, s.p);
        break;
    }
    out.f = updated_freeness(x_free, t_free, relevant_parts(x, tv, s.p), s.f);
    return restore_consistency(std::move(out));
}

SharingFreeness amgu_f(Var x, const Term& t, const SharingFreeness& s) {
    const CliqueSharingFreeness r = amgu_sf(x, t, CliqueSharingFreeness{CliquePair(CliqueSet(s.domain()), s.sh), s.f});
    assert(r.p.cl.empty());
    return SharingFreeness{r.p.sh, r.f};
}

SharingFreeness project_f(VarMask vars, const SharingFreeness& s) {
    return restore_consistency(SharingFreeness{project(vars, s.sh), s.f & vars});
}

SharingFreeness augment_f(VarMask vars, const SharingFreeness& s) {
    return SharingFreeness{augment(vars, s.sh), s.f | vars};
}

SharingFreeness extend_f(const SharingFreeness& call, VarMask g_vars, const SharingFreeness& prime) {
    SharingSet sh = extend(call.sh, g_vars, prime.sh);
    FreenessSet f = prime.f;
    for_each_var(call.f & ~g_vars, [&](unsigned v) {
        const VarMask reach = rel(var_bit(v), sh).support();
        if (is_subset(reach & g_vars, prime.f)) f |= var_bit(v);
    });
    return restore_consistency(SharingFreeness{std::move(sh), f});
}

SharingFreeness extend_f(const SharingFreeness& call, const Term& g, const SharingFreeness& prime) {
    return extend_f(call, vars_of(g), prime);
}

SharingFreeness ground_f(VarMask vars, const SharingFreeness& s) {
    return restore_consistency(SharingFreeness{ground(vars, s.sh), s.f & ~vars});
}

SharingFreeness lub_f(const SharingFreeness& a, const SharingFreeness& b) {
    return SharingFreeness{lub(a.sh, b.sh), a.f & b.f};
}

bool leq_f(const SharingFreeness& a, const SharingFreeness& b) { return leq(a.sh, b.sh) && is_subset(b.f, a.f); }

CliqueSharingFreeness project_sf(VarMask vars, const CliqueSharingFreeness& s) {
    return restore_consistency(CliqueSharingFreeness{project_s(vars, s.p), s.f & vars});
}

CliqueSharingFreeness project_sf(const Term& g, const CliqueSharingFreeness& s) { return project_sf(vars_of(g), s); }

CliqueSharingFreeness augment_sf(VarMask vars, const CliqueSharingFreeness& s) {
    return CliqueSharingFreeness{augment_s(vars, s.p), s.f | vars};
}

CliqueSharingFreeness augment_sf(const Term& g, const CliqueSharingFreeness& s) { return augment_sf(vars_of(g), s); }

CliqueSharingFreeness extend_sf(const CliqueSharingFreeness& call, VarMask g_vars, const CliqueSharingFreeness& prime,
                                const ExtendOptions& opts) {
    CliquePair p = extend_s(call.p, g_vars, prime.p, opts);
    FreenessSet f = prime.f;
    for_each_var(call.f & ~g_vars, [&](unsigned v) {
        const VarMask reach = rel(var_bit(v), p.sh).support() | rel(var_bit(v), p.cl).support();
        if (is_subset(reach & g_vars, prime.f)) f |= var_bit(v);
    });
    return restore_consistency(CliqueSharingFreeness{std::move(p), f});
}

CliqueSharingFreeness extend_sf(const CliqueSharingFreeness& call, const Term& g, const CliqueSharingFreeness& prime,
                                const ExtendOptions& opts) {
    return extend_sf(call, vars_of(g), prime, opts);
}

CliqueSharingFreeness ground_sf(VarMask vars, const CliqueSharingFreeness& s) {
    return restore_consistency(CliqueSharingFreeness{ground_s(vars, s.p), s.f & ~vars});
}

CliqueSharingFreeness lub_sf(const CliqueSharingFreeness& a, const CliqueSharingFreeness& b) {
    return CliqueSharingFreeness{lub_s(a.p, b.p), a.f & b.f};
}

bool leq_sf(const CliqueSharingFreeness& a, const CliqueSharingFreeness& b) {
    return leq_s(a.p, b.p) && is_subset(b.f, a.f);
}

SharingFreeness remap(const SharingFreeness& s, std::span<const int> mapping) {
    return SharingFreeness{remap(s.sh, mapping), remap(s.f, mapping)};
}

CliqueSharingFreeness remap(const CliqueSharingFreeness& s, std::span<const int> mapping) {
    return CliqueSharingFreeness{remap(s.p, mapping), remap(s.f, mapping)};
}

std::string freeness_to_string(FreenessSet f, const VarNames& names) {
    std::string out = "{";
    bool first = true;
    for_each_var(f, [&](unsigned v) {
        if (!first) out += ", ";
        out += group_to_string(var_bit(v), names);
        first = false;
    });
    return out + "}";
}

std::string to_string(const SharingFreeness& s, const VarNames& names) {
    return "(" + to_string(s.sh, names) + ", free: " + freeness_to_string(s.f, names) + ")";
}

std::string to_string(const CliqueSharingFreeness& s, const VarNames& names) {
    return "(" + to_string(s.p, names) + ", free: " + freeness_to_string(s.f, names) + ")";
}

} // namespace cliquesh
