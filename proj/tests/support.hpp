#pragma once

// Shorthand for tests: groups are written as strings over x y z u v w
// (indices 0..5), terms use X Y Z U V W for the same indices.

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cliquesh/domain.hpp"
#include "cliquesh/oracle.hpp"
#include "doctest.h"

namespace tsupport {

using namespace cliquesh;

inline constexpr std::string_view kLetters = "xyzuvw";
inline constexpr VarMask kAll6 = 0x3f;

inline VarMask m(std::string_view s) {
    VarMask out = 0;
    for (char c : s) {
        auto pos = kLetters.find(c);
        REQUIRE_MESSAGE(pos != std::string_view::npos, "bad variable letter");
        out |= var_bit(static_cast<unsigned>(pos));
    }
    return out;
}

inline SharingSet S(std::initializer_list<std::string_view> groups, VarMask domain = kAll6) {
    std::vector<VarMask> v;
    for (auto g : groups) v.push_back(m(g));
    return SharingSet(domain, std::move(v));
}

inline CliquePair P(std::initializer_list<std::string_view> cl, std::initializer_list<std::string_view> sh,
                    VarMask domain = kAll6) {
    return CliquePair(S(cl, domain), S(sh, domain));
}

inline Term T(std::string_view src) {
    VarNames names = {"X", "Y", "Z", "U", "V", "W"};
    return parse_term(src, names);
}

inline std::string str(const SharingSet& s) { return to_string(s); }
/// Canonical rendering of a group list, for order-independent comparisons.
inline std::string G(std::initializer_list<std::string_view> groups) { return to_string(S(groups)); }
inline std::string PG(std::initializer_list<std::string_view> cl, std::initializer_list<std::string_view> sh) {
    return to_string(P(cl, sh));
}
inline std::string str(const CliquePair& p) { return to_string(p); }

// ---- random instances ----

inline SharingSet random_sharing(std::mt19937_64& rng, VarMask domain, double density = 0.3) {
    std::vector<VarMask> groups;
    std::bernoulli_distribution keep(density);
    for_each_nonempty_submask(domain, [&](VarMask g) {
        if (keep(rng)) groups.push_back(g);
    });
    return SharingSet(domain, std::move(groups));
}

inline VarMask random_submask(std::mt19937_64& rng, VarMask domain, bool nonempty = true) {
    for (;;) {
        VarMask out = 0;
        for_each_var(domain, [&](unsigned i) {
            if (rng() & 1) out |= var_bit(i);
        });
        if (out != 0 || !nonempty || domain == 0) return out;
    }
}

inline CliqueSet random_cliques(std::mt19937_64& rng, VarMask domain, unsigned max_cliques = 3) {
    std::vector<VarMask> cl;
    unsigned n = domain == 0 ? 0 : static_cast<unsigned>(rng() % (max_cliques + 1));
    for (unsigned i = 0; i < n; ++i) cl.push_back(random_submask(rng, domain));
    return CliqueSet(domain, std::move(cl));
}

inline CliquePair random_pair(std::mt19937_64& rng, VarMask domain, double density = 0.25, unsigned max_cliques = 3) {
    return CliquePair(random_cliques(rng, domain, max_cliques), random_sharing(rng, domain, density));
}

inline VarMask random_domain(std::mt19937_64& rng, unsigned max_vars = 5) {
    unsigned n = 1 + static_cast<unsigned>(rng() % max_vars);
    return (VarMask{1} << n) - 1;
}

/// Small random data term over the variables of `domain`.
inline Term random_term(std::mt19937_64& rng, VarMask domain, int depth = 2) {
    auto vars = var_indices(domain);
    unsigned pick = static_cast<unsigned>(rng() % 6);
    if (depth == 0 || pick < 2) {
        if (!vars.empty() && pick != 1) return Term::variable(vars[rng() % vars.size()]);
        return Term::atom("a");
    }
    if (pick < 4) return Term::compound("f", {random_term(rng, domain, depth - 1), random_term(rng, domain, depth - 1)});
    return Term::compound("g", {random_term(rng, domain, depth - 1)});
}

/// Plain sharing with the clique part expanded.
inline SharingSet ex(const CliquePair& p) { return oracle::expand(p); }

inline bool subset_of(const SharingSet& a, const SharingSet& b) { return leq(a, b); }

} // namespace tsupport
