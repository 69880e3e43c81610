#include <set>

#include "cliquesh/oracle.hpp"

namespace cliquesh::oracle {
namespace {

using GroupSet = std::set<VarMask>;

GroupSet as_set(const SharingSet& s) { return GroupSet(s.begin(), s.end()); }

SharingSet from_set(VarMask domain, const GroupSet& g) { return SharingSet(domain, std::vector<VarMask>(g.begin(), g.end())); }

GroupSet star_set(const GroupSet& s) {
    if (s.size() > kMaxStarInput) throw ContractError("ref_star: input too large to enumerate");
    const std::vector<VarMask> items(s.begin(), s.end());
    GroupSet out;
    const std::uint64_t n = items.size();
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << n); ++pick) {
        VarMask u = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if ((pick >> i) & 1U) u |= items[i];
        }
        out.insert(u);
    }
    return out;
}

GroupSet relevant(VarMask vars, const GroupSet& s) {
    GroupSet out;
    for (VarMask g : s) {
        if ((g & vars) != 0) out.insert(g);
    }
    return out;
}

} // namespace

SharingSet expand(const CliquePair& p) {
    GroupSet out = as_set(p.sh);
    for (VarMask c : p.cl) {
        if (cardinality(c) > kMaxExpandCliqueVars) throw ContractError("expand: clique too large to enumerate");
        for (VarMask sub = c; sub != 0; sub = (sub - 1) & c) out.insert(sub);
    }
    return from_set(p.domain(), out);
}

SharingFreeness expand(const CliqueSharingFreeness& s) { return SharingFreeness{expand(s.p), s.f}; }

SharingSet ref_bin(const SharingSet& a, const SharingSet& b) {
    GroupSet out;
    for (VarMask x : a) {
        for (VarMask y : b) out.insert(x | y);
    }
    return from_set(a.domain() | b.domain(), out);
}

SharingSet ref_star(const SharingSet& s) { return from_set(s.domain(), star_set(as_set(s))); }

SharingSet ref_amgu(Var x, VarMask t_vars, const SharingSet& sh) {
    const VarMask xm = VarMask{1} << x.id;
    const GroupSet all = as_set(sh);
    GroupSet out;
    for (VarMask g : all) {
        if ((g & (xm | t_vars)) == 0) out.insert(g);
    }
    const GroupSet sx = star_set(relevant(xm, all));
    const GroupSet st = star_set(relevant(t_vars, all));
    for (VarMask a : sx) {
        for (VarMask b : st) out.insert(a | b);
    }
    return from_set(sh.domain(), out);
}

SharingSet ref_project(VarMask vars, const SharingSet& sh) {
    GroupSet out;
    for (VarMask g : sh) {
        if ((g & vars) != 0) out.insert(g & vars);
    }
    return from_set(vars, out);
}

SharingSet ref_extend(const SharingSet& call, VarMask g_vars, const SharingSet& prime) {
    const GroupSet all = as_set(call);
    const GroupSet allowed = as_set(prime);
    GroupSet out;
    for (VarMask g : all) {
        if ((g & g_vars) == 0) out.insert(g);
    }
    for (VarMask s : star_set(relevant(g_vars, all))) {
        if (allowed.contains(s & g_vars)) out.insert(s);
    }
    return from_set(call.domain(), out);
}

SharingFreeness ref_extend_f_raw(const SharingFreeness& call, VarMask g_vars, const SharingFreeness& prime) {
    SharingSet sh = ref_extend(call.sh, g_vars, prime.sh);
    VarMask f = prime.f;
    for (unsigned v = 0; v < kMaxVars; ++v) {
        const VarMask vm = VarMask{1} << v;
        if ((call.f & vm) == 0 || (g_vars & vm) != 0) continue;
        VarMask reach = 0;
        for (VarMask g : sh) {
            if ((g & vm) != 0) reach |= g;
        }
        if (((reach & g_vars) & ~prime.f) == 0) f |= vm;
    }
    return SharingFreeness{std::move(sh), f};
}

SharingFreeness ref_extend_f(const SharingFreeness& call, VarMask g_vars, const SharingFreeness& prime) {
    SharingFreeness raw = ref_extend_f_raw(call, g_vars, prime);
    VarMask alive = 0;
    for (VarMask g : raw.sh) alive |= g;
    raw.f &= alive;
    return raw;
}

std::uint64_t ref_count_covered(VarMask s, const CliqueSet& cl) {
    if (cardinality(s) > kMaxExpandCliqueVars) throw ContractError("ref_count_covered: set too large");
    std::uint64_t n = 0;
    for (VarMask sub = s; sub != 0; sub = (sub - 1) & s) {
        for (VarMask c : cl) {
            if ((sub & ~c) == 0) {
                ++n;
                break;
            }
        }
    }
    return n;
}

bool has_undetected_powerset(const CliquePair& p) {
    const GroupSet all = as_set(expand(p));
    for (VarMask c : all) {
        if (cardinality(c) < 2) continue;
        bool full = true;
        for (VarMask sub = c; sub != 0 && full; sub = (sub - 1) & c) full = all.contains(sub);
        if (!full) continue;
        for (VarMask g : p.sh) {
            if ((g & ~c) == 0) return true;
        }
    }
    return false;
}

} // namespace cliquesh::oracle
