#include "support.hpp"

using namespace cliquesh;
using namespace tsupport;

TEST_SUITE("oracle") {

TEST_CASE("expand") {
    CHECK(str(oracle::expand(P({"xy"}, {}))) == G({"x", "y", "xy"}));
    CHECK(str(oracle::expand(P({}, {"xz", "u"}))) == G({"xz", "u"}));
    CHECK(str(oracle::expand(P({"xyz"}, {"u"}))) == G({"x", "y", "z", "xy", "xz", "yz", "xyz", "u"}));
    CHECK_THROWS_AS(oracle::expand(CliquePair(SharingSet(0x1fffff, {VarMask{0x1fffff}}), SharingSet(0x1fffff))), ContractError);
}

TEST_CASE("reference formulas") {
    CHECK(str(oracle::ref_star(S({"x", "y"}))) == G({"x", "y", "xy"}));
    CHECK(str(oracle::ref_bin(S({"x", "y"}), S({"z"}))) == G({"xz", "yz"}));
    CHECK(oracle::ref_count_covered(m("xyz"), S({"xy", "yz"})) == 5);
    CHECK(str(oracle::ref_amgu(Var{0}, m("y"), S({"x", "y", "z"}))) == G({"xy", "z"}));
    CHECK(str(oracle::ref_project(m("xy"), S({"xz", "z", "y"}))) == G({"x", "y"}));
}

TEST_CASE("optimized and reference agree") {
    std::mt19937_64 rng(21);
    int compared = 0;
    for (int i = 0; i < 10000; ++i) {
        VarMask dom = random_domain(rng, 5);
        auto call = random_sharing(rng, dom, 0.25);
        VarMask g = random_submask(rng, dom, false);
        auto prime = random_sharing(rng, g, 0.4);
        try {
            auto want = oracle::ref_extend(call, g, prime);
            CHECK(extend(call, g, prime) == want);
            ++compared;
        } catch (const ContractError&) {
        }
        auto x = Var{static_cast<unsigned>(rng() % cardinality(dom))};
        VarMask t = random_submask(rng, dom, false);
        try {
            CHECK(amgu(x, t, call) == oracle::ref_amgu(x, t, call));
        } catch (const ContractError&) {
        }
        CHECK(project(g, call) == oracle::ref_project(g, call));
        if (call.size() <= 12) CHECK(star(call) == oracle::ref_star(call));
    }
    CHECK(compared > 9000);
}

}
