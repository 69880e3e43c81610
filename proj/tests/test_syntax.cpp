#include <map>

#include "support.hpp"

using namespace cliquesh;
using tsupport::T;

namespace {

// Renames variables by first occurrence so terms can be compared up to renaming.
Term canonical(const Term& t) {
    std::map<std::uint32_t, std::uint32_t> m;
    std::uint32_t next = 0;
    for (Var v : vars_in_order(t)) m[v.id] = next++;
    return rename_vars(t, m);
}

} // namespace

TEST_SUITE("syntax") {

TEST_CASE("parse_program: a single fact") {
    Program p = parse_program("app([],Y,Y).");
    REQUIRE(p.predicates.size() == 1);
    const auto* cls = p.clauses_of({"app", 3});
    REQUIRE(cls != nullptr);
    REQUIRE(cls->size() == 1);
    CHECK(cls->front().body.empty());
    CHECK(to_string(cls->front().head, cls->front().var_names) == "app([],Y,Y)");
}

TEST_CASE("parse_program: head and body variables") {
    Program p = parse_program("p(X) :- q(X,Y).");
    const Clause& c = p.clauses_of({"p", 1})->front();
    CHECK(c.var_names == VarNames{"X", "Y"});
    CHECK(c.head_vars() == 0b01);
    CHECK(c.all_vars() == 0b11);
    REQUIRE(c.body.size() == 1);
    CHECK(key_of(c.body[0]) == PredicateKey{"q", 2});
}

TEST_CASE("parse_program: malformed clause reports a position") {
    try {
        parse_program("p(X :- .");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() > 1);
        CHECK(std::string(e.what()).find("expected ')'") != std::string::npos);
    }
}

TEST_CASE("parse_program: errors on the second line carry that line") {
    try {
        parse_program("p(a).\nq(X) :- p(X) p(X).");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("entry directives") {
    Program p = parse_program(":- entry app(A, B, C) : ground(A), free(C).\n"
                              "app([], L, L).\napp([H|T], L, [H|R]) :- app(T, L, R).");
    REQUIRE(p.entries.size() == 1);
    const EntryDecl& e = p.entries[0];
    CHECK(to_string(e.goal, e.var_names) == "app(A,B,C)");
    REQUIRE(e.annotations.size() == 2);
    CHECK(e.annotations[0] == ModeAnnotation{Mode::ground, Var{0}});
    CHECK(e.annotations[1] == ModeAnnotation{Mode::free, Var{2}});

    CHECK_THROWS_AS(parse_program(":- entry p(A).\n:- entry p(A).\np(a)."), ParseError);
    CHECK_THROWS_AS(parse_program(":- entry nope(A).\np(a)."), ParseError);
    CHECK_THROWS_AS(parse_program(":- entry p(A) : ground(B).\np(a)."), ParseError);
    CHECK_NOTHROW(parse_program(":- entry p(A).\np(a)."));
}

TEST_CASE("operators, lists, comments and anonymous variables") {
    VarNames names;
    Term t = parse_term("X is Y + 1 * 2", names);
    CHECK(to_string(t, names) == "(X is (Y + (1 * 2)))");
    CHECK(t.functor() == "is");
    CHECK(t.args()[1].functor() == "+");
    CHECK(t.args()[1].args()[1].functor() == "*");

    names.clear();
    Term l = parse_term("[A, B | T]", names);
    CHECK(l.functor() == ".");
    CHECK(vars_of(l) == 0b111);

    Program p = parse_program("% comment\n/* block\n comment */ p(_, _) :- 'quoted atom'(X), X = -1.");
    const Clause& c = p.clauses_of({"p", 2})->front();
    CHECK(c.num_vars() == 3); // two distinct anonymous variables plus X
    CHECK(is_linear(c.head));
    CHECK(key_of(c.body[0]).name == "quoted atom");
}

TEST_CASE("vars_of") {
    CHECK(vars_of(T("f(X, g(Y, X))")) == 0b11);
    CHECK(vars_of(T("a")) == 0);
    CHECK(vars_of(T("p(X, U, V)")) == tsupport::m("xuv")); // ĝ = {x,u,v}
    CHECK(vars_of(T("f(X)"), T("g(Z)")) == 0b101);
}

TEST_CASE("is_linear and vars_in_order") {
    CHECK(is_linear(T("f(X, Y)")));
    CHECK_FALSE(is_linear(T("f(X, g(X))")));
    auto order = vars_in_order(T("f(Z, g(X, Z), Y)"));
    REQUIRE(order.size() == 3);
    CHECK(order[0].id == 2);
    CHECK(order[1].id == 0);
    CHECK(order[2].id == 1);
}

TEST_CASE("too many variables") {
    CHECK_THROWS_AS(vars_of(Term::variable(64)), TooManyVariables);
}

TEST_CASE("solve: examples") {
    auto eq = solve(T("p(X, Y)"), T("p(U, V)"));
    REQUIRE(eq);
    REQUIRE(eq->size() == 2);
    CHECK((*eq)[0].var.id == 0);
    CHECK((*eq)[0].term == T("U"));
    CHECK((*eq)[1].var.id == 1);
    CHECK((*eq)[1].term == T("V"));

    CHECK_FALSE(solve(T("f(a)"), T("f(b)")));
    CHECK_FALSE(solve(T("X"), T("f(X)")));
    CHECK_FALSE(solve(T("f(X, Y)"), T("f(g(Y), g(X))")));
    CHECK_FALSE(solve(T("f(X)"), T("g(X)")));
}

TEST_CASE("solve: solved form") {
    auto eq = solve(T("f(X, g(Y))"), T("f(g(Z), X)"));
    REQUIRE(eq);
    VarMask lhs = 0, rhs = 0;
    for (const auto& b : *eq) {
        CHECK_FALSE(meets(lhs, var_bit(b.var.id)));
        lhs |= var_bit(b.var.id);
        rhs |= vars_of(b.term);
    }
    CHECK_FALSE(meets(lhs, rhs));
}

TEST_CASE("solve: unifier property and symmetry on random terms") {
    std::mt19937_64 rng(7);
    int unified = 0;
    for (int i = 0; i < 3000; ++i) {
        Term a = tsupport::random_term(rng, 0b1111, 3);
        Term b = tsupport::random_term(rng, 0b1111, 3);
        auto ab = solve(a, b);
        auto ba = solve(b, a);
        REQUIRE(static_cast<bool>(ab) == static_cast<bool>(ba));
        if (!ab) continue;
        ++unified;
        CHECK(cliquesh::apply(*ab, a) == cliquesh::apply(*ab, b));
        CHECK(cliquesh::apply(*ba, a) == cliquesh::apply(*ba, b));
        Term pair1 = Term::compound("pair", std::vector<Term>{cliquesh::apply(*ab, a), cliquesh::apply(*ab, b)});
        Term pair2 = Term::compound("pair", std::vector<Term>{cliquesh::apply(*ba, a), cliquesh::apply(*ba, b)});
        CHECK(canonical(pair1) == canonical(pair2));
    }
    CHECK(unified > 100);
}

TEST_CASE("rename_apart") {
    Program p = parse_program("p(X) :- q(X, Y).\nf(a, b).");
    const Clause& c = p.clauses_of({"p", 1})->front();
    Clause r = rename_apart(c, c.all_vars());
    CHECK_FALSE(meets(r.all_vars(), c.all_vars()));
    CHECK(r.head.args()[0].var().id >= 2);
    CHECK(r.var_names[r.head.args()[0].var().id].starts_with("X"));

    const Clause& fact = p.clauses_of({"f", 2})->front();
    CHECK(rename_apart(fact, 0b1111).head == fact.head);

    Clause r2 = rename_apart(c, c.all_vars() | r.all_vars());
    CHECK_FALSE(meets(r2.all_vars(), r.all_vars()));
    CHECK_FALSE(meets(r2.all_vars(), c.all_vars()));
}

TEST_CASE("rename_apart: random taken sets") {
    Program p = parse_program("p(A, B, C) :- q(A, D), r(D, E, B), s(C).");
    const Clause& c = p.clauses_of({"p", 3})->front();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        VarMask taken = rng() & 0xffffff;
        Clause r = rename_apart(c, taken);
        CHECK_FALSE(meets(r.all_vars(), taken));
        CHECK(r.body.size() == c.body.size());
        CHECK(canonical(Term::compound("c", std::vector<Term>{r.head, r.body[0], r.body[1], r.body[2]})) ==
              canonical(Term::compound("c", std::vector<Term>{c.head, c.body[0], c.body[1], c.body[2]})));
    }
}

TEST_CASE("builtin table") {
    CHECK(is_builtin({"=", 2}));
    CHECK(is_builtin({"is", 2}));
    CHECK(is_builtin({"true", 0}));
    CHECK_FALSE(is_builtin({"app", 3}));
}

}
