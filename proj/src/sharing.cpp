#include <algorithm>
#include <unordered_set>

#include "cliquesh/kernels.hpp"
#include "cliquesh/sharing.hpp"

namespace cliquesh {
namespace {

void canonicalize(std::vector<VarMask>& g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
}

void require_within(VarMask vars, VarMask domain, const char* op) {
    if (!is_subset(vars, domain)) {
        throw ContractError(std::string(op) + ": variables outside the substitution's domain");
    }
}

} // namespace

SharingSet::SharingSet(VarMask domain, std::vector<VarMask> groups) : domain_(domain), groups_(std::move(groups)) {
    for (VarMask g : groups_) {
        if (g == 0) throw ContractError("sharing group must be nonempty");
        if (!is_subset(g, domain_)) throw ContractError("sharing group outside the domain");
    }
    canonicalize(groups_);
}

SharingSet SharingSet::from_unsorted(VarMask domain, std::vector<VarMask> groups) {
    SharingSet s(domain);
    s.groups_ = std::move(groups);
    canonicalize(s.groups_);
    return s;
}

bool SharingSet::contains(VarMask g) const { return std::binary_search(groups_.begin(), groups_.end(), g); }

VarMask SharingSet::support() const {
    VarMask m = 0;
    for (VarMask g : groups_) m |= g;
    return m;
}

void SharingSet::set_domain(VarMask d) {
    if (!is_subset(support(), d)) throw ContractError("set_domain: groups fall outside the new domain");
    domain_ = d;
}

SharingSet bin(const SharingSet& s1, const SharingSet& s2) {
    std::vector<VarMask> out;
    out.reserve(s1.size() * s2.size());
    for (VarMask a : s1) {
        for (VarMask b : s2) out.push_back(a | b);
    }
    return SharingSet::from_unsorted(s1.domain() | s2.domain(), std::move(out));
}

SharingSet star(const SharingSet& s) {
    // closure(C ∪ {g}) = C ∪ {g} ∪ { c ∪ g | c ∈ C } whenever C is closed
    std::unordered_set<VarMask> seen;
    std::vector<VarMask> closure;
    for (VarMask g : s) {
        if (seen.contains(g)) continue;
        const std::size_t n = closure.size();
        for (std::size_t i = 0; i < n; ++i) {
            const VarMask u = closure[i] | g;
            if (seen.insert(u).second) closure.push_back(u);
        }
        if (seen.insert(g).second) closure.push_back(g);
    }
    return SharingSet::from_unsorted(s.domain(), std::move(closure));
}

RelSplit split_rel(VarMask vars, const SharingSet& sh) {
    std::vector<VarMask> meeting, disjoint;
    kernels::active().partition_by_mask(sh.groups(), vars, meeting, disjoint);
    // partitioning preserves the sorted order
    RelSplit out{SharingSet(sh.domain()), SharingSet(sh.domain())};
    out.relevant = SharingSet::from_unsorted(sh.domain(), std::move(meeting));
    out.irrelevant = SharingSet::from_unsorted(sh.domain(), std::move(disjoint));
    return out;
}

SharingSet rel(VarMask vars, const SharingSet& sh) { return split_rel(vars, sh).relevant; }
SharingSet rel(const Term& t, const SharingSet& sh) { return rel(vars_of(t), sh); }
SharingSet irrel(VarMask vars, const SharingSet& sh) { return split_rel(vars, sh).irrelevant; }
SharingSet irrel(const Term& t, const SharingSet& sh) { return irrel(vars_of(t), sh); }

SharingSet set_union(const SharingSet& a, const SharingSet& b) {
    std::vector<VarMask> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    SharingSet r = SharingSet::from_unsorted(a.domain() | b.domain(), std::move(out));
    return r;
}

SharingSet amgu(Var x, VarMask t_vars, const SharingSet& sh) {
    const VarMask xm = var_bit(x.id);
    require_within(xm | t_vars, sh.domain(), "amgu");
    const RelSplit xt = split_rel(xm | t_vars, sh);
    const SharingSet sh_x = rel(xm, xt.relevant);
    const SharingSet sh_t = rel(t_vars, xt.relevant);
    return set_union(xt.irrelevant, bin(star(sh_x), star(sh_t)));
}

SharingSet amgu(Var x, const Term& t, const SharingSet& sh) { return amgu(x, vars_of(t), sh); }

SharingSet project(VarMask vars, const SharingSet& sh) {
    std::vector<VarMask> out;
    kernels::active().project_onto(sh.groups(), vars, out);
    return SharingSet::from_unsorted(vars, std::move(out));
}

SharingSet project(const Term& g, const SharingSet& sh) { return project(vars_of(g), sh); }

SharingSet augment(VarMask vars, const SharingSet& sh) {
    if (meets(vars, sh.domain())) throw ContractError("augment: variables are not fresh");
    std::vector<VarMask> groups(sh.begin(), sh.end());
    for_each_var(vars, [&](unsigned i) { groups.push_back(var_bit(i)); });
    return SharingSet::from_unsorted(sh.domain() | vars, std::move(groups));
}

SharingSet augment(const Term& g, const SharingSet& sh) { return augment(vars_of(g), sh); }

SharingSet extend(const SharingSet& call, VarMask g_vars, const SharingSet& prime) {
    require_within(g_vars, call.domain(), "extend");
    const RelSplit split = split_rel(g_vars, call);
    std::vector<VarMask> out(split.irrelevant.begin(), split.irrelevant.end());
    for (VarMask s : star(split.relevant)) {
        if (prime.contains(s & g_vars)) out.push_back(s);
    }
    return SharingSet::from_unsorted(call.domain(), std::move(out));
}

SharingSet extend(const SharingSet& call, const Term& g, const SharingSet& prime) {
    return extend(call, vars_of(g), prime);
}

SharingSet ground(VarMask vars, const SharingSet& sh) { return irrel(vars, sh); }

SharingSet lub(const SharingSet& a, const SharingSet& b) { return set_union(a, b); }

bool leq(const SharingSet& a, const SharingSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SharingSet top(VarMask vars) {
    if (cardinality(vars) > 24) throw ContractError("top: too many variables to enumerate");
    std::vector<VarMask> out;
    out.reserve((std::size_t{1} << cardinality(vars)) - 1);
    for_each_nonempty_submask(vars, [&](VarMask s) { out.push_back(s); });
    return SharingSet::from_unsorted(vars, std::move(out));
}

VarMask remap(VarMask m, std::span<const int> mapping) {
    VarMask out = 0;
    for_each_var(m, [&](unsigned i) {
        if (i >= mapping.size() || mapping[i] < 0) throw ContractError("remap: variable without a mapping");
        out |= var_bit(static_cast<unsigned>(mapping[i]));
    });
    return out;
}

SharingSet remap(const SharingSet& s, std::span<const int> mapping) {
    std::vector<VarMask> out;
    out.reserve(s.size());
    for (VarMask g : s) out.push_back(remap(g, mapping));
    return SharingSet::from_unsorted(remap(s.domain(), mapping), std::move(out));
}

std::string default_var_name(unsigned index) {
    static constexpr const char* kNames[] = {"x", "y", "z", "u", "v", "w"};
    return index < 6 ? kNames[index] : "v" + std::to_string(index);
}

std::string group_to_string(VarMask g, const VarNames& names) {
    std::string out;
    for_each_var(g, [&](unsigned i) {
        out += (i < names.size() && !names[i].empty()) ? names[i] : default_var_name(i);
    });
    return out;
}

std::string to_string(const SharingSet& s, const VarNames& names) {
    std::vector<std::vector<unsigned>> order;
    order.reserve(s.size());
    for (VarMask g : s) order.push_back(var_indices(g));
    std::sort(order.begin(), order.end());
    std::string out = "{";
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i != 0) out += ", ";
        VarMask g = 0;
        for (unsigned v : order[i]) g |= var_bit(v);
        out += group_to_string(g, names);
    }
    return out + "}";
}

} // namespace cliquesh
