#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace cliquesh::kernels {
namespace {

constexpr KernelTable kScalar{Isa::scalar,
                              &scalar::partition_by_mask,
                              &scalar::project_onto,
                              &scalar::count_subsets_of,
                              &scalar::covered_by_any,
                              &scalar::drop_covered};

#if defined(CLIQUESH_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2,
                            &avx2::partition_by_mask,
                            &avx2::project_onto,
                            &avx2::count_subsets_of,
                            &avx2::covered_by_any,
                            &avx2::drop_covered};
#endif

const KernelTable* initial_table() {
    const char* forced = std::getenv("CLIQUESH_ISA");
    if (forced != nullptr && std::string(forced) == "scalar") return &kScalar;
    if (isa_available(Isa::avx2)) return &table_for(Isa::avx2);
    return &kScalar;
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

} // namespace

const KernelTable& scalar_table() { return kScalar; }

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(CLIQUESH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_available(isa)) throw std::runtime_error("kernel ISA not available: " + std::string(isa_name(isa)));
#if defined(CLIQUESH_HAVE_AVX2)
    if (isa == Isa::avx2) return kAvx2;
#endif
    return kScalar;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) { current().store(&table_for(isa), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

} // namespace cliquesh::kernels
