// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace cliquesh::kernels::avx2 {
namespace {

inline __m256i load4(const VarMask* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

// One bit per 64-bit lane: set where the lane is zero.
inline unsigned zero_lanes(__m256i v) {
    const __m256i eq = _mm256_cmpeq_epi64(v, _mm256_setzero_si256());
    return static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(eq)));
}

} // namespace

void partition_by_mask(std::span<const VarMask> groups, VarMask mask, std::vector<VarMask>& meeting,
                       std::vector<VarMask>& disjoint) {
    const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
    const std::size_t n = groups.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const unsigned zero = zero_lanes(_mm256_and_si256(load4(&groups[i]), m));
        for (unsigned lane = 0; lane < 4; ++lane) ((zero >> lane) & 1U ? disjoint : meeting).push_back(groups[i + lane]);
    }
    for (; i < n; ++i) (meets(groups[i], mask) ? meeting : disjoint).push_back(groups[i]);
}

void project_onto(std::span<const VarMask> groups, VarMask mask, std::vector<VarMask>& out) {
    const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
    const std::size_t n = groups.size();
    std::size_t i = 0;
    alignas(32) VarMask lanes[4];
    for (; i + 4 <= n; i += 4) {
        const __m256i p = _mm256_and_si256(load4(&groups[i]), m);
        const unsigned zero = zero_lanes(p);
        if (zero == 0xF) continue;
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), p);
        for (unsigned lane = 0; lane < 4; ++lane) {
            if (((zero >> lane) & 1U) == 0) out.push_back(lanes[lane]);
        }
    }
    for (; i < n; ++i) {
        if (VarMask p = groups[i] & mask; p != 0) out.push_back(p);
    }
}

std::size_t count_subsets_of(std::span<const VarMask> groups, VarMask s) {
    const __m256i sv = _mm256_set1_epi64x(static_cast<long long>(s));
    const std::size_t n = groups.size();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // andnot(a, b) = ~a & b, zero exactly when the group lies inside s
        count += static_cast<std::size_t>(std::popcount(zero_lanes(_mm256_andnot_si256(sv, load4(&groups[i])))));
    }
    for (; i < n; ++i) count += is_subset(groups[i], s) ? 1 : 0;
    return count;
}

bool covered_by_any(std::span<const VarMask> cliques, VarMask g) {
    const __m256i gv = _mm256_set1_epi64x(static_cast<long long>(g));
    const std::size_t n = cliques.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        if (zero_lanes(_mm256_andnot_si256(load4(&cliques[i]), gv)) != 0) return true;
    }
    for (; i < n; ++i) {
        if (is_subset(g, cliques[i])) return true;
    }
    return false;
}

void drop_covered(std::span<const VarMask> groups, std::span<const VarMask> cliques, std::vector<VarMask>& out) {
    for (VarMask g : groups) {
        if (!covered_by_any(cliques, g)) out.push_back(g);
    }
}

} // namespace cliquesh::kernels::avx2
