#include <algorithm>

#include "cliquesh/clique.hpp"
#include "cliquesh/kernels.hpp"
#include "cliquesh/normalize.hpp"

namespace cliquesh {
namespace {

CliqueSet add_cliques(const CliqueSet& cl, std::vector<VarMask> extra) {
    extra.insert(extra.end(), cl.begin(), cl.end());
    return SharingSet::from_unsorted(cl.domain(), std::move(extra));
}

void require_within(VarMask vars, VarMask domain, const char* op) {
    if (!is_subset(vars, domain)) throw ContractError(std::string(op) + ": variables outside the domain");
}

} // namespace

CliquePair::CliquePair(CliqueSet cliques, SharingSet sharing) : cl(std::move(cliques)), sh(std::move(sharing)) {
    if (cl.domain() != sh.domain()) {
        const VarMask d = cl.domain() | sh.domain();
        cl.set_domain(d);
        sh.set_domain(d);
    }
}

CliqueSet rel_bar(VarMask vars, const CliqueSet& cl) {
    std::vector<VarMask> out;
    out.reserve(cl.size());
    for (VarMask c : cl) {
        if (VarMask rest = c & ~vars; rest != 0) out.push_back(rest);
    }
    return SharingSet::from_unsorted(cl.domain(), std::move(out));
}

CliqueSet regularize(const CliqueSet& cl) {
    std::vector<VarMask> by_size(cl.begin(), cl.end());
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](VarMask a, VarMask b) { return cardinality(a) > cardinality(b); });
    std::vector<VarMask> kept;
    kept.reserve(by_size.size());
    const auto& k = kernels::active();
    for (VarMask c : by_size) {
        if (!k.covered_by_any(kept, c)) kept.push_back(c);
    }
    return SharingSet::from_unsorted(cl.domain(), std::move(kept));
}

CliquePair amgu_s(Var x, VarMask t_vars, const CliquePair& p) {
    const VarMask xm = var_bit(x.id);
    const VarMask xt = xm | t_vars;
    require_within(xt, p.domain(), "amgu_s");
    const RelSplit cl_split = split_rel(xt, p.cl);
    const RelSplit sh_split = split_rel(xt, p.sh);
    const SharingSet cl_x = rel(xm, cl_split.relevant);
    const SharingSet cl_t = rel(t_vars, cl_split.relevant);
    const SharingSet sh_x = rel(xm, sh_split.relevant);
    const SharingSet sh_t = rel(t_vars, sh_split.relevant);

    if (cl_x.empty() && cl_t.empty()) {
        return CliquePair(p.cl, set_union(sh_split.irrelevant, bin(star(sh_x), star(sh_t))));
    }
    if ((cl_x.empty() && sh_x.empty()) || (cl_t.empty() && sh_t.empty())) {
        return CliquePair(regularize(rel_bar(xt, p.cl)), sh_split.irrelevant);
    }
    const VarMask merged = cl_x.support() | cl_t.support() | sh_x.support() | sh_t.support();
    return CliquePair(regularize(add_cliques(rel_bar(xt, p.cl), {merged})), sh_split.irrelevant);
}

CliquePair amgu_s(Var x, const Term& t, const CliquePair& p) { return amgu_s(x, vars_of(t), p); }

CliquePair project_s(VarMask vars, const CliquePair& p) {
    return CliquePair(regularize(project(vars, p.cl)), project(vars, p.sh));
}

CliquePair project_s(const Term& g, const CliquePair& p) { return project_s(vars_of(g), p); }

CliquePair augment_s(VarMask vars, const CliquePair& p) {
    SharingSet sh = augment(vars, p.sh);
    CliqueSet cl = p.cl;
    cl.set_domain(sh.domain());
    return CliquePair(std::move(cl), std::move(sh));
}

CliquePair augment_s(const Term& g, const CliquePair& p) { return augment_s(vars_of(g), p); }

CliquePair ground_s(VarMask vars, const CliquePair& p) {
    return CliquePair(regularize(rel_bar(vars, p.cl)), irrel(vars, p.sh));
}

CliquePair extend_worstcase(const CliquePair& call, VarMask g_vars) {
    require_within(g_vars, call.domain(), "extend_worstcase");
    const SharingSet cl_star = star(rel(g_vars, call.cl));
    const SharingSet sh_star = star(rel(g_vars, call.sh));
    return normalize(CliquePair(set_union(cl_star, bin(cl_star, sh_star)), sh_star));
}

CliquePair extend_worstcase(const CliquePair& call, const Term& g) { return extend_worstcase(call, vars_of(g)); }

SharingSet extsh(const SharingSet& sh1, VarMask g_vars, const SharingSet& sh2, const SharingSet& sh_prime) {
    std::vector<VarMask> out;
    const RelSplit split = split_rel(g_vars, sh1);
    out.assign(split.irrelevant.begin(), split.irrelevant.end());
    for (VarMask s : sh_prime) {
        if (sh2.contains(s & g_vars)) out.push_back(s);
    }
    return SharingSet::from_unsorted(sh1.domain() | sh_prime.domain(), std::move(out));
}

CliqueSet extcl(const CliqueSet& cl1, VarMask g_vars, const CliqueSet& cl2, const CliqueSet& cl_prime) {
    std::vector<VarMask> out;
    for (VarMask c : rel_bar(g_vars, cl1)) out.push_back(c);
    for (VarMask sp : cl_prime) {
        const VarMask outside = sp & ~g_vars;
        for (VarMask s : cl2) {
            if (VarMask c = (sp & s) | outside; c != 0) out.push_back(c);
        }
    }
    return SharingSet::from_unsorted(cl1.domain() | cl_prime.domain(), std::move(out));
}

ClshResult clsh(const CliqueSet& cl_prime, VarMask g_vars, const SharingSet& sh2, unsigned clique_limit) {
    std::vector<VarMask> groups;
    std::vector<VarMask> spilled;
    for (VarMask c : cl_prime) {
        const VarMask outside = c & ~g_vars;
        if (cardinality(c) > clique_limit) {
            VarMask cover = 0;
            for (VarMask t : sh2) {
                if (is_subset(t, c)) cover |= t;
            }
            if (cover != 0) spilled.push_back(cover | outside);
            continue;
        }
        for (VarMask t : sh2) {
            if (!is_subset(t, c)) continue;
            groups.push_back(t);
            for_each_nonempty_submask(outside, [&](VarMask sub) { groups.push_back(t | sub); });
        }
    }
    const VarMask d = cl_prime.domain() | sh2.domain();
    return ClshResult{SharingSet::from_unsorted(d, std::move(groups)), SharingSet::from_unsorted(d, std::move(spilled))};
}

SharingSet shcl(const SharingSet& sh_prime, VarMask g_vars, const CliqueSet& cl2) {
    std::vector<VarMask> out;
    const auto& k = kernels::active();
    for (VarMask s : sh_prime) {
        if (k.covered_by_any(cl2.groups(), s & g_vars)) out.push_back(s);
    }
    return SharingSet::from_unsorted(sh_prime.domain(), std::move(out));
}

CliquePair extend_s(const CliquePair& call, VarMask g_vars, const CliquePair& prime, const ExtendOptions& opts,
                    ExtendTrace* trace) {
    require_within(g_vars, call.domain(), "extend_s");
    require_within(prime.support(), g_vars, "extend_s prime");
    const CliquePair worst = extend_worstcase(call, g_vars);
    SharingSet e_sh = extsh(call.sh, g_vars, prime.sh, worst.sh);
    CliqueSet e_cl = extcl(call.cl, g_vars, prime.cl, worst.cl);
    ClshResult c = clsh(worst.cl, g_vars, prime.sh, opts.clsh_clique_limit);
    SharingSet s = shcl(worst.sh, g_vars, prime.cl);

    CliqueSet cliques = set_union(e_cl, c.spilled);
    cliques.set_domain(call.domain());
    SharingSet sharing = set_union(set_union(e_sh, c.groups), s);
    sharing.set_domain(call.domain());
    if (trace != nullptr) {
        *trace = ExtendTrace{worst, e_sh, e_cl, c.groups, s, CliquePair(cliques, sharing)};
    }
    return CliquePair(regularize(cliques), std::move(sharing));
}

CliquePair extend_s(const CliquePair& call, const Term& g, const CliquePair& prime, const ExtendOptions& opts) {
    return extend_s(call, vars_of(g), prime, opts);
}

CliquePair lub_s(const CliquePair& a, const CliquePair& b) {
    return CliquePair(regularize(set_union(a.cl, b.cl)), set_union(a.sh, b.sh));
}

bool leq_s(const CliquePair& a, const CliquePair& b) {
    const auto& k = kernels::active();
    for (VarMask c : a.cl) {
        if (!k.covered_by_any(b.cl.groups(), c)) return false;
    }
    for (VarMask s : a.sh) {
        if (!b.sh.contains(s) && !k.covered_by_any(b.cl.groups(), s)) return false;
    }
    return true;
}

bool leq_exact_s(const CliquePair& a, const CliquePair& b) {
    const auto& k = kernels::active();
    for (VarMask s : a.sh) {
        if (!b.sh.contains(s) && !k.covered_by_any(b.cl.groups(), s)) return false;
    }
    const CliquePair b_min = minimize(b);
    for (VarMask c : a.cl) {
        if (k.covered_by_any(b.cl.groups(), c)) continue;
        const unsigned n = cardinality(c);
        const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        const std::uint64_t have = count_covered(c, b_min.cl) + k.count_subsets_of(b_min.sh.groups(), c);
        if (have != all) return false;
    }
    return true;
}

CliquePair top_s(VarMask vars) {
    CliquePair p(vars);
    if (vars != 0) p.cl = CliqueSet(vars, {vars});
    return p;
}

CliquePair remap(const CliquePair& p, std::span<const int> mapping) {
    return CliquePair(remap(p.cl, mapping), remap(p.sh, mapping));
}

std::string to_string(const CliquePair& p, const VarNames& names) {
    return "(" + to_string(p.cl, names) + ", " + to_string(p.sh, names) + ")";
}

} // namespace cliquesh
