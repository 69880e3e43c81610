#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cliquesh/clique.hpp"

namespace cliquesh {

enum class NormalizeSite : unsigned { at_extend = 1, at_call2entry = 2, at_lub = 4, at_compare = 8 };

/// Where the engine runs clique detection, and whether detection may widen.
struct NormalizePolicy {
    unsigned sites = static_cast<unsigned>(NormalizeSite::at_extend) | static_cast<unsigned>(NormalizeSite::at_compare) |
                     static_cast<unsigned>(NormalizeSite::at_call2entry);
    /// Fraction in (0, 1]; when set, detection accepts candidates with at least
    /// this fraction of their missing subsets present.
    std::optional<double> widening_threshold;

    /// extend + compare + call2entry.
    static NormalizePolicy defaults() { return NormalizePolicy{}; }
    /// extend + compare only.
    static NormalizePolicy minimal();

    [[nodiscard]] bool at(NormalizeSite s) const { return (sites & static_cast<unsigned>(s)) != 0; }
    void enable(NormalizeSite s) { sites |= static_cast<unsigned>(s); }
    [[nodiscard]] std::string describe() const;
};

std::optional<NormalizeSite> parse_site(std::string_view name);
std::string_view site_name(NormalizeSite s);

/// Removes from sh every group contained in some clique.
CliquePair minimize(const CliquePair& p);

/// Number of nonempty subsets of s already represented by cl, by
/// inclusion-exclusion over I = { s ∩ C | C ∈ cl } \ {∅}.
std::uint64_t count_covered(VarMask s, const CliqueSet& cl);

/// Moves every complete powerset found in sh into cl. Input must be minimal
/// (throws ContractError otherwise); the represented sharing is unchanged.
CliquePair detect_cliques(const CliquePair& p);

/// detect_cliques(minimize(p)) with a regular clique set.
CliquePair normalize(const CliquePair& p);

/// Like normalize, but a candidate S of size i becomes a clique once
/// |SS| >= threshold * (2^i - 1 - [S]). May over-approximate.
CliquePair widen(const CliquePair& p, double threshold);

/// |⇓cl ∪ sh| computed without enumerating the cliques.
std::uint64_t expansion_size(const CliquePair& p);

/// normalize, or widen when the policy sets a threshold.
CliquePair normalize_with(const CliquePair& p, const NormalizePolicy& policy);

} // namespace cliquesh
