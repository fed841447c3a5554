#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qg/classify.hpp"
#include "qg/construct.hpp"
#include "qg/term.hpp"

using namespace qg;

namespace {

QuasigroupTable t3() { return QuasigroupTable::from_rows({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }
QuasigroupTable m3() { return QuasigroupTable::from_rows({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}); }

Permutation z3_negation() { return Permutation({0, 2, 1}); }

} // namespace

TEST_CASE("group spec parsing") {
    CHECK(GroupSpec::parse("Z6").to_string() == "Z6");
    CHECK(GroupSpec::parse("Z2xZ2xZ4").to_string() == "Z2xZ2xZ4");
    CHECK(GroupSpec::parse("S3").to_string() == "S3");
    CHECK_THROWS_AS(GroupSpec::parse("K4"), ConstructError);
    CHECK_THROWS_AS(GroupSpec::parse("Z"), ConstructError);
    CHECK_THROWS_AS(GroupSpec::parse("Z2x"), ConstructError);
}

TEST_CASE("builtin groups resolve to certified tables") {
    CHECK(resolve_group("Z3") == t3());

    QuasigroupTable klein = resolve_group("Z2xZ2");
    CHECK(klein == QuasigroupTable::from_rows(
                       {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));

    GroupAnalysis d4 = analyze_group(resolve_group("D4"));
    CHECK(d4.is_group);
    CHECK_FALSE(d4.is_abelian);
    CHECK(d4.nilpotency_class == 2);

    GroupAnalysis q8 = analyze_group(resolve_group("Q8"));
    CHECK(q8.is_group);
    CHECK_FALSE(q8.is_abelian);
    CHECK(q8.nilpotency_class == 2);

    GroupAnalysis s3 = analyze_group(resolve_group("S3"));
    CHECK(s3.is_group);
    CHECK_FALSE(s3.is_abelian);
    CHECK_FALSE(s3.nilpotent());

    GroupAnalysis z6 = analyze_group(resolve_group("Z6"));
    CHECK(z6.is_abelian);

    // mixed direct products work too
    GroupAnalysis s3z2 = analyze_group(resolve_group("S3xZ2"));
    CHECK(s3z2.is_group);
    CHECK_FALSE(s3z2.is_abelian);
}

TEST_CASE("automorphism enumeration") {
    std::vector<Permutation> aut_z3 = enumerate_automorphisms(resolve_group("Z3"));
    REQUIRE(aut_z3.size() == 2);
    CHECK(aut_z3[0].is_identity());
    CHECK(aut_z3[1] == z3_negation());

    CHECK(enumerate_automorphisms(resolve_group("Z2xZ2")).size() == 6);
    CHECK(enumerate_automorphisms(resolve_group("Z6")).size() == 2);
    CHECK(enumerate_automorphisms(resolve_group("S3")).size() == 6);
    CHECK(enumerate_automorphisms(resolve_group("Q8")).size() == 24);

    for (const char* name : {"Z4", "Z2xZ2", "D4"}) {
        QuasigroupTable g = resolve_group(name);
        std::vector<Permutation> autos = enumerate_automorphisms(g);
        bool has_identity = false;
        for (size_t i = 0; i < autos.size(); ++i) {
            CHECK(is_automorphism(g, autos[i]));
            if (autos[i].is_identity()) has_identity = true;
            if (i) CHECK(autos[i - 1] < autos[i]);
        }
        CHECK(has_identity);
    }

    CHECK_THROWS_AS(enumerate_automorphisms(resolve_group("Z16")), ConstructError);
    CHECK(enumerate_automorphisms(resolve_group("Z16"), 16).size() == 8);
}

TEST_CASE("linear quasigroups") {
    QuasigroupTable z3 = resolve_group("Z3");
    CHECK(linear_quasigroup({z3, Permutation::identity(3), z3_negation(), 0,
                             LinearForm::Middle}) == m3());

    for (const char* name : {"Z4", "S3"}) {
        QuasigroupTable g = resolve_group(name);
        Permutation id = Permutation::identity(g.order());
        CHECK(linear_quasigroup({g, id, id, 0, LinearForm::Middle}) == g);
        CHECK(linear_quasigroup({g, id, id, 0, LinearForm::Trailing}) == g);
    }

    // trailing vs middle differ over a nonabelian group when c is not central
    QuasigroupTable s3 = resolve_group("S3");
    Permutation id6 = Permutation::identity(6);
    CHECK(linear_quasigroup({s3, id6, id6, 1, LinearForm::Middle}) !=
          linear_quasigroup({s3, id6, id6, 1, LinearForm::Trailing}));

    CHECK_THROWS_AS(
        linear_quasigroup({resolve_group("Z4"), Permutation({1, 0, 2, 3}),
                           Permutation::identity(4), 0, LinearForm::Middle}),
        ConstructError);
}

TEST_CASE("toyoda direction on a commuting pair") {
    QuasigroupTable z5 = resolve_group("Z5");
    std::vector<Permutation> autos = enumerate_automorphisms(z5);
    REQUIRE(autos.size() == 4);
    Identity medial = parse_identity("(x*y)*(z*w) = (x*z)*(y*w)");
    for (const Permutation& phi : autos)
        for (const Permutation& psi : autos)
            for (Element c : {0, 3}) {
                QuasigroupTable q = t_quasigroup({z5, phi, psi, c, LinearForm::Middle});
                CHECK(check_identity(q, medial).holds);  // Aut(Z5) is abelian
            }
}

TEST_CASE("ch quasigroups") {
    QuasigroupTable ch = ch_quasigroup(resolve_group("Z3"), 0);
    CHECK(ch == QuasigroupTable::from_rows({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}));

    Identity comm = parse_identity("x*y = y*x");
    Identity keys = parse_identity("x*(x*y) = y");
    for (const char* name : {"Z5", "Z2xZ2", "Z9"}) {
        QuasigroupTable g = resolve_group(name);
        for (Element d = 0; d < g.order(); ++d) {
            QuasigroupTable q = ch_quasigroup(g, d);
            CHECK(check_identity(q, comm).holds);
            CHECK(check_identity(q, keys).holds);
        }
    }
    CHECK_THROWS_AS(ch_quasigroup(resolve_group("S3"), 0), ConstructError);
}

TEST_CASE("left distributive quasigroups") {
    QuasigroupTable q = left_distributive_quasigroup(resolve_group("Z3"), z3_negation());
    // x + (-(-x+y)) = 2x - y (mod 3)
    CHECK(q == QuasigroupTable::from_rows({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}));
    CHECK(check_identity(q, parse_identity("x*(y*z) = (x*y)*(x*z)")).holds);

    try {
        left_distributive_quasigroup(resolve_group("Z2"), Permutation::identity(2));
        FAIL("expected PsiNotBijective");
    } catch (const ConstructError& e) {
        CHECK(e.kind == ConstructError::Kind::PsiNotBijective);
    }
    CHECK_THROWS_AS(
        left_distributive_quasigroup(resolve_group("Z3"), Permutation::identity(3)),
        ConstructError);
}

TEST_CASE("t quasigroups require abelian groups") {
    QuasigroupTable s3 = resolve_group("S3");
    Permutation id = Permutation::identity(6);
    try {
        t_quasigroup({s3, id, id, 0, LinearForm::Middle});
        FAIL("expected NotAbelian");
    } catch (const ConstructError& e) {
        CHECK(e.kind == ConstructError::Kind::NotAbelian);
    }
    QuasigroupTable z3 = resolve_group("Z3");
    CHECK(t_quasigroup({z3, Permutation::identity(3), z3_negation(), 0, LinearForm::Middle}) ==
          m3());
}

TEST_CASE("every builder output validates across small sweeps") {
    for (const char* name : {"Z2", "Z3", "Z4", "Z2xZ2", "Z6"}) {
        QuasigroupTable g = resolve_group(name);
        std::vector<Permutation> autos = enumerate_automorphisms(g);
        for (const Permutation& phi : autos)
            for (const Permutation& psi : autos)
                for (Element c : {0, g.order() - 1}) {
                    // construction validates internally; reaching here is the check
                    QuasigroupTable q =
                        linear_quasigroup({g, phi, psi, c, LinearForm::Middle});
                    CHECK(q.order() == g.order());
                }
    }
}
