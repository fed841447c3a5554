#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qg/rng.hpp"
#include "qg/table.hpp"
#include "qg/term.hpp"

using namespace qg;

namespace {

QuasigroupTable t3() { return QuasigroupTable::from_rows({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }
QuasigroupTable m3() { return QuasigroupTable::from_rows({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}); }
QuasigroupTable s3() {
    return QuasigroupTable::from_rows({{0, 1, 2, 3, 4, 5},
                                       {1, 0, 4, 5, 2, 3},
                                       {2, 3, 0, 1, 5, 4},
                                       {3, 2, 5, 4, 0, 1},
                                       {4, 5, 1, 0, 3, 2},
                                       {5, 4, 3, 2, 1, 0}});
}

TermPtr random_term(Rng& rng, int budget) {
    if (budget <= 1 || rng.below(3) == 0) {
        static const char* names[] = {"x", "y", "z", "w"};
        if (rng.below(8) == 0) return Term::constant_u();
        return Term::variable(names[rng.below(4)]);
    }
    Op op = static_cast<Op>(rng.below(3));
    int left = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(budget - 1)));
    return Term::binary(op, random_term(rng, left), random_term(rng, budget - left));
}

} // namespace

TEST_CASE("parsing follows the grammar") {
    TermPtr t = parse_term("x*(x\\y)");
    REQUIRE(t->kind == Term::Kind::Bin);
    CHECK(t->op == Op::Mul);
    CHECK(t->left->var == "x");
    CHECK(t->right->op == Op::LDiv);

    // same precedence, left associative
    TermPtr d = parse_term("x/y/z");
    CHECK(d->op == Op::RDiv);
    CHECK(d->left->op == Op::RDiv);
    CHECK(d->right->var == "z");
    CHECK(to_string(d) == "(x/y)/z");

    CHECK(term_equal(parse_term("x * ( x \\ y )"), parse_term("x*(x\\y)")));
    CHECK(parse_term("u")->kind == Term::Kind::ConstU);
    CHECK(parse_term("u1")->kind == Term::Kind::Var);
}

TEST_CASE("parse errors carry the offset") {
    try {
        parse_term("x*)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
    }
    CHECK_THROWS_AS(parse_term(""), ParseError);
    CHECK_THROWS_AS(parse_term("x*"), ParseError);
    CHECK_THROWS_AS(parse_term("(x*y"), ParseError);
    CHECK_THROWS_AS(parse_term("x y"), ParseError);
    CHECK_THROWS_AS(parse_term("X*y"), ParseError);
}

TEST_CASE("identity parsing and the variable list") {
    Identity belousov = parse_identity("x\\(y*(u1\\v)) = u1\\(y*(x\\v))");
    CHECK(belousov.variables == std::vector<std::string>{"x", "y", "u1", "v"});

    Identity trivial = parse_identity("x = x");
    CHECK(trivial.variables == std::vector<std::string>{"x"});

    CHECK_THROWS_AS(parse_identity("x = "), ParseError);
    CHECK_THROWS_AS(parse_identity("x"), MissingEqualsError);
    CHECK_THROWS_AS(parse_identity("x = y = z"), ParseError);
}

TEST_CASE("printer round-trips") {
    Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        TermPtr t = random_term(rng, 1 + static_cast<int>(rng.below(14)));
        CHECK(term_equal(parse_term(to_string(t)), t));
    }
}

TEST_CASE("evaluation") {
    // axiom x*(x\y) = y on assorted squares
    TermPtr axiom = parse_term("x*(x\\y)");
    for (const QuasigroupTable& q : {t3(), m3(), random_latin_square(5, 8)})
        for (int a = 0; a < q.order(); ++a)
            for (int b = 0; b < q.order(); ++b)
                CHECK(eval(axiom, q, {{"x", a}, {"y", b}}) == b);

    CHECK(eval(parse_term("x/y"), m3(), {{"x", 1}, {"y", 2}}) == 0);
    CHECK(eval(parse_term("u"), t3(), {}) == 0);
    CHECK(eval(parse_term("u"), t3(), {}, 2) == 2);
    CHECK_THROWS_AS(eval(parse_term("x*y"), t3(), {{"x", 0}}), EvalError);
}

TEST_CASE("identity checking") {
    Identity medial = parse_identity("(x*y)*(z*w) = (x*z)*(y*w)");
    CHECK(check_identity(m3(), medial).holds);

    CheckResult res = check_identity(s3(), medial);
    CHECK_FALSE(res.holds);

    // independent oracle: first failing assignment in lexicographic order
    std::vector<std::pair<std::string, Element>> expected;
    bool found = false;
    for (int x = 0; x < 6 && !found; ++x)
        for (int y = 0; y < 6 && !found; ++y)
            for (int z = 0; z < 6 && !found; ++z)
                for (int w = 0; w < 6 && !found; ++w) {
                    QuasigroupTable q = s3();
                    if (q.mul(q.mul(x, y), q.mul(z, w)) != q.mul(q.mul(x, z), q.mul(y, w))) {
                        expected = {{"x", x}, {"y", y}, {"z", z}, {"w", w}};
                        found = true;
                    }
                }
    REQUIRE(found);
    CHECK(res.counterexample == expected);

    // the axiom holds on every order-3 square
    Identity axiom = parse_identity("x*(x\\y) = y");
    for (const QuasigroupTable& q : all_latin_squares(3))
        CHECK(check_identity(q, axiom).holds);

    // zero-variable identities run exactly one assignment
    CHECK(check_identity(t3(), parse_identity("u = u")).holds);
    CHECK_FALSE(check_identity(t3(), parse_identity("u*u = u"), 100, 1).holds);
}

TEST_CASE("budget accounting") {
    Identity medial = parse_identity("(x*y)*(z*w) = (x*z)*(y*w)");
    CHECK_THROWS_AS(check_identity(t3(), medial, 80), BudgetError);
    CHECK(check_identity(t3(), medial, 81).holds);  // 3^4 assignments exactly
    try {
        check_identity(s3(), medial, 10);
        FAIL("expected budget error");
    } catch (const BudgetError& e) {
        CHECK(e.variables == 4);
        CHECK(e.order == 6);
    }
}

TEST_CASE("counterexamples match a naive scan") {
    Identity comm = parse_identity("x*y = y*x");
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        QuasigroupTable q = random_latin_square(5, seed);
        CheckResult res = check_identity(q, comm);
        bool naive_found = false;
        for (int x = 0; x < 5 && !naive_found; ++x)
            for (int y = 0; y < 5 && !naive_found; ++y)
                if (q.mul(x, y) != q.mul(y, x)) {
                    naive_found = true;
                    REQUIRE_FALSE(res.holds);
                    CHECK(res.counterexample ==
                          std::vector<std::pair<std::string, Element>>{{"x", x}, {"y", y}});
                }
        CHECK(naive_found != res.holds);
    }
}

TEST_CASE("loop identity parsing") {
    LoopIdentity comm = parse_loop_identity("x+y = y+x");
    CHECK(comm.variables == std::vector<std::string>{"x", "y"});
    CHECK(to_string(comm.lhs) == "x+y");

    LoopIdentity assoc = parse_loop_identity("(x+y)+z = x+(y+z)");
    CHECK(assoc.lhs->kind == LoopTerm::Kind::Plus);
    CHECK(assoc.lhs->left->kind == LoopTerm::Kind::Plus);
    CHECK(to_string(assoc.rhs) == "x+(y+z)");

    // left associativity of '+'
    CHECK(to_string(parse_loop_term("x+y+z")) == "(x+y)+z");

    CHECK_THROWS_AS(parse_loop_term("u+x"), ParseError);
    CHECK(parse_loop_term("-x")->kind == LoopTerm::Kind::Neg);
    CHECK(parse_loop_term("0")->kind == LoopTerm::Kind::Zero);
}
