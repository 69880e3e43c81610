#include "kernels_impl.hpp"

namespace cliquesh::kernels::scalar {

void partition_by_mask(std::span<const VarMask> groups, VarMask mask, std::vector<VarMask>& meeting,
                       std::vector<VarMask>& disjoint) {
    for (VarMask g : groups) (meets(g, mask) ? meeting : disjoint).push_back(g);
}

void project_onto(std::span<const VarMask> groups, VarMask mask, std::vector<VarMask>& out) {
    for (VarMask g : groups) {
        if (VarMask p = g & mask; p != 0) out.push_back(p);
    }
}

std::size_t count_subsets_of(std::span<const VarMask> groups, VarMask s) {
    std::size_t n = 0;
    for (VarMask g : groups) n += is_subset(g, s) ? 1 : 0;
    return n;
}

bool covered_by_any(std::span<const VarMask> cliques, VarMask g) {
    for (VarMask c : cliques) {
        if (is_subset(g, c)) return true;
    }
    return false;
}

void drop_covered(std::span<const VarMask> groups, std::span<const VarMask> cliques, std::vector<VarMask>& out) {
    for (VarMask g : groups) {
        if (!covered_by_any(cliques, g)) out.push_back(g);
    }
}

} // namespace cliquesh::kernels::scalar
