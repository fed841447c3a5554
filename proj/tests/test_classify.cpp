#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qg/classify.hpp"
#include "qg/construct.hpp"
#include "qg/rng.hpp"

using namespace qg;

namespace {

QuasigroupTable t3() { return QuasigroupTable::from_rows({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }
QuasigroupTable m3() { return QuasigroupTable::from_rows({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}); }

} // namespace

TEST_CASE("catalog shape") {
    const std::vector<CatalogEntry>& entries = catalog();
    CHECK(entries.size() >= 16);
    for (size_t i = 0; i < entries.size(); ++i) {
        CHECK_FALSE(entries[i].identity.variables.empty());
        CHECK(entries[i].identity.variables.size() <= 7);
        if (i) CHECK(entries[i - 1].key < entries[i].key);
    }
    const CatalogEntry* belousov = catalog_find("AB_BELOUSOV");
    REQUIRE(belousov);
    CHECK(belousov->identity.variables.size() == 4);
    CHECK(catalog_find("NO_SUCH_KEY") == nullptr);
    for (const std::string& key : abelian_cluster_keys()) CHECK(catalog_find(key));
    CHECK(abelian_cluster_keys().size() == 11);
}

TEST_CASE("quasicommutator") {
    // evaluate the defining formula by hand in T3 with u=1, v=2:
    // {0,2} = R1((R1'0 · L2'2) / L2'(R1'2 · L2'0)) = R1(2/0) = R1(2) = 0
    std::vector<Element> xs{0, 2};
    CHECK(quasicommutator(t3(), 1, 2, xs) == 0);
    CHECK(t3().mul(2, 1) == 0);

    // {x,x} collapses to the isotope identity v*u on any group table
    for (const char* name : {"Z6", "D4"}) {
        QuasigroupTable g = resolve_group(name);
        for (int u = 0; u < g.order(); ++u)
            for (int v = 0; v < g.order(); ++v)
                for (int x = 0; x < g.order(); ++x) {
                    std::vector<Element> pair{x, x};
                    CHECK(quasicommutator(g, u, v, pair) == g.mul(v, u));
                }
    }

    // some quasicommutator over S3 misses v*u
    QuasigroupTable s3 = resolve_group("S3");
    bool witness = false;
    for (int u = 0; u < 6 && !witness; ++u)
        for (int v = 0; v < 6 && !witness; ++v)
            for (int x1 = 0; x1 < 6 && !witness; ++x1)
                for (int x2 = 0; x2 < 6 && !witness; ++x2) {
                    std::vector<Element> pair{x1, x2};
                    witness = quasicommutator(s3, u, v, pair) != s3.mul(v, u);
                }
    CHECK(witness);

    std::vector<Element> single{0};
    CHECK_THROWS_AS(quasicommutator(t3(), 0, 0, single), std::invalid_argument);
}

TEST_CASE("nilpotent isotopy checks") {
    CHECK(check_nilpotent_isotopy(m3(), 1).holds);

    QuasigroupTable s3 = resolve_group("S3");
    for (int n = 1; n <= 3; ++n) CHECK_FALSE(check_nilpotent_isotopy(s3, n).holds);

    QuasigroupTable d4 = resolve_group("D4");
    std::vector<Permutation> autos = enumerate_automorphisms(d4);
    REQUIRE(autos.size() >= 3);
    QuasigroupTable q = linear_quasigroup({d4, autos[1], autos[2], 3, LinearForm::Middle});
    CHECK_FALSE(check_nilpotent_isotopy(q, 1).holds);
    CHECK(check_nilpotent_isotopy(q, 2).holds);
    CHECK(check_nilpotent_isotopy(q, 3).holds);

    // chain: holds at n implies holds at n+1 (sampled)
    for (uint64_t seed : {4ull, 9ull}) {
        QuasigroupTable r = random_latin_square(4, seed);
        if (check_nilpotent_isotopy(r, 1).holds) CHECK(check_nilpotent_isotopy(r, 2).holds);
    }

    CHECK_THROWS_AS(check_nilpotent_isotopy(resolve_group("Z6"), 5, 1000), BudgetError);
}

TEST_CASE("engel isotopy checks") {
    CHECK(check_engel_isotopy(m3(), 2).holds);
    CHECK_FALSE(check_engel_isotopy(resolve_group("S3"), 2).holds);

    QuasigroupTable d4 = resolve_group("D4");
    std::vector<Permutation> autos = enumerate_automorphisms(d4);
    QuasigroupTable q = linear_quasigroup({d4, autos[1], autos[0], 0, LinearForm::Middle});
    CHECK(check_engel_isotopy(q, 3).holds);  // class 2 isotope is 3-engel
    CHECK_THROWS_AS(check_engel_isotopy(m3(), 1), std::invalid_argument);
}

TEST_CASE("derived identities") {
    CHECK(to_string(derive_identity(parse_loop_identity("x+y = y+x"))) ==
          "(x/u1)*(v\\y) = (y/u1)*(v\\x)");
    CHECK(to_string(derive_identity(parse_loop_identity("(x+y)+z = x+(y+z)"))) ==
          "(((x/u1)*(v\\y))/u1)*(v\\z) = (x/u1)*(v\\((y/u1)*(v\\z)))");

    Identity moufang = derive_identity(parse_loop_identity("(x+(y+z))+x = (x+y)+(z+x)"));
    CHECK(moufang.variables.size() == 5);

    // fresh variables avoid collisions with the loop identity's own names
    Identity collided = derive_identity(parse_loop_identity("u1+v = v+u1"));
    CHECK(to_string(collided) == "(u1/u2)*(v1\\v) = (v/u2)*(v1\\u1)");

    CHECK_THROWS_AS(derive_identity(parse_loop_identity("-x = x")), DeriveError);
    CHECK_THROWS_AS(derive_identity(parse_loop_identity("x+0 = x")), DeriveError);
}

TEST_CASE("derived identities hold exactly on translate isotopes") {
    // a principal isotope of a group satisfies the derived identity of any
    // loop identity the group satisfies
    Identity derived_comm = derive_identity(parse_loop_identity("x+y = y+x"));
    Identity derived_assoc = derive_identity(parse_loop_identity("(x+y)+z = x+(y+z)"));
    QuasigroupTable z5 = resolve_group("Z5");
    Permutation id = Permutation::identity(5);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            QuasigroupTable iso =
                z5.isotope(z5.right_translation(a).inverse(), z5.left_translation(b).inverse(), id);
            CHECK(check_identity(iso, derived_comm).holds);
            CHECK(check_identity(iso, derived_assoc).holds);
        }
}

TEST_CASE("isotopy oracle") {
    IsotopyOracle m = oracle_isotopy(m3());
    CHECK(m.group_isotope);
    CHECK(m.abelian_isotope);
    CHECK(m.nilpotency_class == 1);

    IsotopyOracle s = oracle_isotopy(resolve_group("S3"));
    CHECK(s.group_isotope);
    CHECK_FALSE(s.abelian_isotope);
    CHECK_FALSE(s.nilpotency_class.has_value());

    // a seeded order-5 square that fails the Belousov identity is not an
    // abelian-group isotope
    const CatalogEntry* belousov = catalog_find("AB_BELOUSOV");
    bool checked = false;
    for (uint64_t seed = 1; seed <= 20 && !checked; ++seed) {
        QuasigroupTable q = random_latin_square(5, seed);
        if (!check_identity(q, belousov->identity).holds) {
            CHECK_FALSE(oracle_isotopy(q).abelian_isotope);
            checked = true;
        }
    }
    CHECK(checked);
}

TEST_CASE("T-decomposition") {
    std::optional<TDecomposition> dec = decompose_t(m3());
    REQUIRE(dec.has_value());
    CHECK(reconstruct_t(m3(), *dec) == m3());

    CHECK_FALSE(decompose_t(resolve_group("S3")).has_value());

    QuasigroupTable z4 = resolve_group("Z4");
    std::vector<Permutation> autos = enumerate_automorphisms(z4);
    for (const Permutation& phi : autos)
        for (const Permutation& psi : autos)
            for (Element c : {0, 1, 3}) {
                QuasigroupTable q = t_quasigroup({z4, phi, psi, c, LinearForm::Middle});
                std::optional<TDecomposition> d = decompose_t(q);
                REQUIRE(d.has_value());
                CHECK(reconstruct_t(q, *d) == q);
            }
}

TEST_CASE("abelian isotopy does not imply a T-decomposition") {
    // every order-4 square is isotopic to Z4 or to the Klein group, but only
    // the linear ones decompose; both kinds must show up
    long long t_count = 0, non_t_count = 0;
    for (const QuasigroupTable& q : all_latin_squares(4)) {
        CHECK(oracle_isotopy(q).abelian_isotope);
        std::optional<TDecomposition> dec = decompose_t(q);
        if (dec) {
            ++t_count;
            CHECK(reconstruct_t(q, *dec) == q);
        } else {
            ++non_t_count;
        }
    }
    CHECK(t_count > 0);
    CHECK(non_t_count > 0);
}

TEST_CASE("classification reports") {
    ClassifyOptions opts;
    opts.max_class = 1;
    opts.decompose = true;
    ClassificationReport m = classify(m3(), opts);
    CHECK(m.entries.at("MEDIAL").verdict == Verdict::Holds);
    for (const std::string& key : abelian_cluster_keys())
        CHECK(m.entries.at(key).verdict == Verdict::Holds);
    for (const std::string& key : group_cluster_keys())
        CHECK(m.entries.at(key).verdict == Verdict::Holds);
    CHECK(m.oracle.abelian_isotope);
    CHECK(m.t_decomposition.has_value());
    CHECK(m.nilpotent_isotopy.at(1).verdict == Verdict::Holds);
    CHECK(m.consistent);

    ClassificationReport s = classify(resolve_group("S3"));
    for (const std::string& key : group_cluster_keys())
        CHECK(s.entries.at(key).verdict == Verdict::Holds);
    for (const std::string& key : abelian_cluster_keys())
        CHECK(s.entries.at(key).verdict == Verdict::Fails);
    CHECK(s.oracle.group_isotope);
    CHECK_FALSE(s.oracle.abelian_isotope);
    CHECK(s.consistent);

    // random order-5 squares are rarely group isotopes
    bool saw_non_group = false;
    for (uint64_t seed = 1; seed <= 10 && !saw_non_group; ++seed) {
        QuasigroupTable q = random_latin_square(5, seed);
        ClassificationReport r = classify(q);
        if (!r.oracle.group_isotope) {
            saw_non_group = true;
            for (const std::string& key : group_cluster_keys())
                CHECK(r.entries.at(key).verdict == Verdict::Fails);
            CHECK(r.consistent);
        }
    }
    CHECK(saw_non_group);
}

TEST_CASE("cluster verdicts survive general isotopes with nontrivial h") {
    Rng rng(555);
    auto rand_perm = [&](int n) {
        std::vector<int> im(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = i;
        rng.shuffle(im);
        return Permutation(im);
    };
    for (const char* name : {"S3", "Z6", "D4", "Z8"}) {
        QuasigroupTable g = resolve_group(name);
        bool abelian = analyze_group(g).is_abelian;
        for (int trial = 0; trial < 5; ++trial) {
            QuasigroupTable q = g.isotope(rand_perm(g.order()), rand_perm(g.order()),
                                          rand_perm(g.order()));
            IsotopyOracle o = oracle_isotopy(q);
            CHECK(o.group_isotope);
            CHECK(o.abelian_isotope == abelian);
            for (const std::string& key : group_cluster_keys())
                CHECK(check_identity(q, catalog_find(key)->identity).holds);
            for (const std::string& key : abelian_cluster_keys())
                CHECK(check_identity(q, catalog_find(key)->identity).holds == abelian);
        }
    }
}

TEST_CASE("budget overruns are per entry, not fatal") {
    QuasigroupTable z7 = resolve_group("Z7");
    ClassifyOptions opts;
    opts.budget = 1;  // floor still lets 4-variable entries run at order 7
    ClassificationReport r = classify(z7, opts);
    CHECK(r.entries.at("GROUP_5VAR").verdict == Verdict::BudgetExceeded);
    CHECK(r.entries.at("GROUP_4VAR").verdict == Verdict::Holds);
    CHECK(r.entries.at("AB_BELOUSOV").verdict == Verdict::Holds);
    CHECK(r.consistent);
}

TEST_CASE("report serialization") {
    ClassifyOptions opts;
    opts.max_class = 1;
    opts.decompose = true;
    nlohmann::json j = report_to_json(classify(m3(), opts));
    CHECK(j["order"] == 3);
    CHECK(j["entries"]["MEDIAL"]["verdict"] == "holds");
    CHECK(j["oracle"]["abelian_isotope"] == true);
    CHECK(j["oracle"]["nilpotency_class"] == 1);
    CHECK(j["consistency"] == true);
    CHECK(j["t_decomposition"]["found"] == true);
    CHECK(j["nilpotent_isotopy"]["1"]["verdict"] == "holds");

    nlohmann::json s = report_to_json(classify(resolve_group("S3")));
    CHECK(s["oracle"]["nilpotency_class"].is_null());
    CHECK(s["entries"]["AB_BELOUSOV"]["counterexample"].is_array());
}
