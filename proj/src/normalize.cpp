#include <algorithm>
#include <stdexcept>

#include "cliquesh/kernels.hpp"
#include "cliquesh/normalize.hpp"

namespace cliquesh {
namespace {

constexpr std::uint64_t full_powerset_size(unsigned n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Signed inclusion-exclusion over index subsets of `items`, pruned at empty
// intersections (their term and every extension contribute zero). Arithmetic
// wraps modulo 2^64; the final value is exact whenever it fits.
void inclusion_exclusion(const std::vector<VarMask>& items, std::size_t from, VarMask acc, bool positive,
                         std::uint64_t& sum) {
    for (std::size_t j = from; j < items.size(); ++j) {
        const VarMask next = acc & items[j];
        if (next == 0) continue;
        const std::uint64_t term = full_powerset_size(cardinality(next));
        sum = positive ? sum + term : sum - term;
        inclusion_exclusion(items, j + 1, next, !positive, sum);
    }
}

bool is_minimal(const CliquePair& p) {
    const auto& k = kernels::active();
    return std::none_of(p.sh.begin(), p.sh.end(), [&](VarMask s) { return k.covered_by_any(p.cl.groups(), s); });
}

// Clique detection over a minimal pair. threshold == 1 is exact detection.
CliquePair detect(const CliquePair& p, double threshold) {
    CliqueSet cl = regularize(p.cl);
    std::vector<VarMask> sh(p.sh.begin(), p.sh.end());
    if (cl.empty() && sh.size() < 3) return CliquePair(cl, p.sh);

    unsigned largest = 0;
    for (VarMask s : sh) largest = std::max(largest, cardinality(s));
    const auto& k = kernels::active();

    for (unsigned i = largest; i >= 2; --i) {
        std::vector<VarMask> candidates;
        for (VarMask s : sh) {
            if (cardinality(s) == i) candidates.push_back(s);
        }
        for (VarMask candidate : candidates) {
            if (!std::binary_search(sh.begin(), sh.end(), candidate)) continue;
            const std::uint64_t present = k.count_subsets_of(sh, candidate);
            const std::uint64_t missing = full_powerset_size(i) - count_covered(candidate, cl);
            const bool accept = threshold >= 1.0 ? present == missing
                                                 : static_cast<double>(present) >= threshold * static_cast<double>(missing);
            if (!accept) continue;
            std::vector<VarMask> grown(cl.begin(), cl.end());
            grown.push_back(candidate);
            cl = regularize(SharingSet::from_unsorted(cl.domain() | p.domain(), std::move(grown)));
            std::erase_if(sh, [&](VarMask s) { return is_subset(s, candidate); });
        }
    }
    CliquePair out(std::move(cl), SharingSet::from_unsorted(p.domain(), std::move(sh)));
    return out;
}

} // namespace

NormalizePolicy NormalizePolicy::minimal() {
    NormalizePolicy p;
    p.sites = static_cast<unsigned>(NormalizeSite::at_extend) | static_cast<unsigned>(NormalizeSite::at_compare);
    return p;
}

std::string NormalizePolicy::describe() const {
    std::string out;
    for (NormalizeSite s : {NormalizeSite::at_extend, NormalizeSite::at_call2entry, NormalizeSite::at_lub,
                            NormalizeSite::at_compare}) {
        if (!at(s)) continue;
        if (!out.empty()) out += ',';
        out += site_name(s);
    }
    if (widening_threshold) out += ";widen=" + std::to_string(*widening_threshold);
    return out;
}

std::optional<NormalizeSite> parse_site(std::string_view name) {
    if (name == "extend") return NormalizeSite::at_extend;
    if (name == "call2entry") return NormalizeSite::at_call2entry;
    if (name == "lub") return NormalizeSite::at_lub;
    if (name == "compare") return NormalizeSite::at_compare;
    return std::nullopt;
}

std::string_view site_name(NormalizeSite s) {
    switch (s) {
    case NormalizeSite::at_extend:
        return "extend";
    case NormalizeSite::at_call2entry:
        return "call2entry";
    case NormalizeSite::at_lub:
        return "lub";
    case NormalizeSite::at_compare:
        return "compare";
    }
    return "?";
}

CliquePair minimize(const CliquePair& p) {
    std::vector<VarMask> kept;
    kept.reserve(p.sh.size());
    kernels::active().drop_covered(p.sh.groups(), p.cl.groups(), kept);
    return CliquePair(p.cl, SharingSet::from_unsorted(p.domain(), std::move(kept)));
}

std::uint64_t count_covered(VarMask s, const CliqueSet& cl) {
    std::vector<VarMask> parts;
    for (VarMask c : cl) {
        if (VarMask part = s & c; part != 0) parts.push_back(part);
    }
    // Members contained in another member add nothing to the union.
    const CliqueSet maximal = regularize(SharingSet::from_unsorted(s, std::move(parts)));
    const std::vector<VarMask> items(maximal.begin(), maximal.end());
    std::uint64_t sum = 0;
    inclusion_exclusion(items, 0, ~VarMask{0}, true, sum);
    return sum;
}

CliquePair detect_cliques(const CliquePair& p) {
    if (!is_minimal(p)) throw ContractError("detect_cliques: input pair is not minimal");
    return detect(p, 1.0);
}

CliquePair normalize(const CliquePair& p) {
    return detect(minimize(CliquePair(regularize(p.cl), p.sh)), 1.0);
}

CliquePair widen(const CliquePair& p, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw ContractError("widen: threshold must lie in (0, 1]");
    return detect(minimize(CliquePair(regularize(p.cl), p.sh)), threshold);
}

std::uint64_t expansion_size(const CliquePair& p) {
    std::vector<VarMask> uncovered;
    kernels::active().drop_covered(p.sh.groups(), p.cl.groups(), uncovered);
    return count_covered(p.domain() | p.support(), p.cl) + uncovered.size();
}

CliquePair normalize_with(const CliquePair& p, const NormalizePolicy& policy) {
    return policy.widening_threshold ? widen(p, *policy.widening_threshold) : normalize(p);
}

} // namespace cliquesh
