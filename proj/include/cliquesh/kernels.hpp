#pragma once

// Data-parallel inner loops over arrays of variable masks. Every kernel has a
// scalar reference version and, on x86-64, an AVX2 version; the variant is
// chosen once at startup from the CPU features (or CLIQUESH_ISA=scalar|avx2).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cliquesh/var_mask.hpp"

namespace cliquesh::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    /// Appends each group to `meeting` if it intersects mask, else to `disjoint`.
    void (*partition_by_mask)(std::span<const VarMask> groups, VarMask mask, std::vector<VarMask>& meeting,
                              std::vector<VarMask>& disjoint);
    /// Appends g & mask for every group meeting mask (unsorted, may repeat).
    void (*project_onto)(std::span<const VarMask> groups, VarMask mask, std::vector<VarMask>& out);
    /// Number of groups that are subsets of s.
    std::size_t (*count_subsets_of)(std::span<const VarMask> groups, VarMask s);
    /// True iff g is a subset of some clique.
    bool (*covered_by_any)(std::span<const VarMask> cliques, VarMask g);
    /// Appends every group that is not a subset of any clique.
    void (*drop_covered)(std::span<const VarMask> groups, std::span<const VarMask> cliques,
                         std::vector<VarMask>& out);
};

const KernelTable& scalar_table();
bool isa_available(Isa isa);
/// Table for a specific ISA; throws std::runtime_error when unavailable.
const KernelTable& table_for(Isa isa);

/// The table all domain operations use.
const KernelTable& active();
/// Overrides the active table (tests and benchmarks). Not thread-safe against
/// concurrent kernel calls.
void select(Isa isa);

std::string_view isa_name(Isa isa);

} // namespace cliquesh::kernels
