#pragma once

#include "cliquesh/kernels.hpp"

namespace cliquesh::kernels {

namespace scalar {
void partition_by_mask(std::span<const VarMask>, VarMask, std::vector<VarMask>&, std::vector<VarMask>&);
void project_onto(std::span<const VarMask>, VarMask, std::vector<VarMask>&);
std::size_t count_subsets_of(std::span<const VarMask>, VarMask);
bool covered_by_any(std::span<const VarMask>, VarMask);
void drop_covered(std::span<const VarMask>, std::span<const VarMask>, std::vector<VarMask>&);
} // namespace scalar

#if defined(CLIQUESH_HAVE_AVX2)
namespace avx2 {
void partition_by_mask(std::span<const VarMask>, VarMask, std::vector<VarMask>&, std::vector<VarMask>&);
void project_onto(std::span<const VarMask>, VarMask, std::vector<VarMask>&);
std::size_t count_subsets_of(std::span<const VarMask>, VarMask);
bool covered_by_any(std::span<const VarMask>, VarMask);
void drop_covered(std::span<const VarMask>, std::span<const VarMask>, std::vector<VarMask>&);
} // namespace avx2
#endif

} // namespace cliquesh::kernels
