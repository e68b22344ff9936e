#include "doctest.h"

#include <cstdlib>

#include "qcas/presets.hpp"
#include "qcas/wdvv.hpp"

using namespace qcas;

TEST_CASE("quadpoly_arithmetic_drops_zeros") {
    QuadPoly p;
    NVar a{{1}, {2}}, b{{2}, {5}};
    p.add_lin(a, Rat(3));
    p.add_lin(a, Rat(-3));
    CHECK(p.is_zero());
    p.add_quad(a, b, Rat(1));
    p.add_quad(b, a, Rat(1));  // unordered pair folds
    REQUIRE(p.quad.size() == 1);
    CHECK(p.quad.begin()->second == Rat(2));
    QuadPoly q = p;
    q *= Rat(1, 2);
    q -= p;
    q += p;
    CHECK(q.quad.begin()->second == Rat(1));
}

TEST_CASE("tuple_canonicalization_orbit") {
    auto c = canonical_tuple(3, 1, 1, 2);
    CHECK(c.t == std::array<int, 4>{1, 1, 2, 3});
    CHECK(c.sign == -1);
    CHECK_FALSE(c.trivial);

    auto d = canonical_tuple(2, 1, 3, 4);
    CHECK(d.t == std::array<int, 4>{1, 2, 4, 3});
    CHECK(d.sign == 1);

    CHECK(canonical_tuple(1, 2, 1, 2).trivial);  // k = i and l = j
    CHECK(canonical_tuple(0, 1, 2, 3).trivial);  // identity slot
}

TEST_CASE("gamma_coefficient_slots") {
    Bundle b = get_preset("P2");
    // divisor slots multiply in the class pairing and leave d alone
    auto g = gamma_coefficient(b, 1, 1, 1, {2}, {5});
    REQUIRE(g);
    CHECK(g->first == Rat(8));
    CHECK(g->second == NVar{{2}, {5}});

    // higher slots shift the degree vector instead
    auto h = gamma_coefficient(b, 1, 2, 2, {2}, {3});
    REQUIRE(h);
    CHECK(h->first == Rat(2));
    CHECK(h->second == NVar{{2}, {5}});

    // identity slot kills the term
    CHECK_FALSE(gamma_coefficient(b, 0, 1, 1, {1}, {2}));
    // dimension filter rejects the shifted variable
    CHECK_FALSE(gamma_coefficient(b, 1, 1, 1, {2}, {3}));
    CHECK_FALSE(gamma_coefficient(b, 2, 2, 2, {1}, {0}));
}

TEST_CASE("plane_relation_stream") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    CHECK(enumerate_relations(b, pd, {1}).empty());

    auto rels = enumerate_relations(b, pd, {2});
    REQUIRE(rels.size() == 1);
    CHECK(relation_id_to_string(b.alg, rels[0].id) == "<h,h,h2,h2>(2;2)");
    CHECK(quadpoly_to_string(rels[0].poly) == "N(2;5) - N(1;2)*N(1;2)");

    // seed relation set is empty: no degree-zero two-divisor relation fits the grading
    CHECK(enumerate_seed_relations(b, pd).empty());
}

TEST_CASE("toric_seed_relation_census") {
    Bundle b = get_preset("toric-ex2");
    auto pd = pairing_data(b.alg);
    auto seeds = enumerate_seed_relations(b, pd);
    CHECK(seeds.size() == 21);
    int nonzero = 0;
    for (const auto& r : seeds) nonzero += !r.poly.is_zero();
    CHECK(nonzero == 20);
}

TEST_CASE("orbit_counting_formulas_match_enumeration") {
    for (int r = 2; r <= 8; ++r) {
        INFO("r = " << r);
        CHECK(count_formulas(r) == brute_count(r));
    }
    CHECK(count_formulas(3) == FormulaCounts{1, 1});
    CHECK(count_formulas(4) == FormulaCounts{6, 6});
    CHECK(count_formulas(5) == FormulaCounts{21, 20});
    CHECK(count_formulas(6) == FormulaCounts{55, 50});
    CHECK(count_formulas(7) == FormulaCounts{120, 105});
    CHECK(count_formulas(8) == FormulaCounts{231, 196});
    CHECK_THROWS_AS(brute_count(11), QcasError);
}

TEST_CASE("cyclic_sum_of_relations_vanishes") {
    Bundle b = get_preset("toric-ex2");
    auto pd = pairing_data(b.alg);
    CHECK(check_two_out_of_three(b, pd, 1, 2, 3, 4, {1, 1}, {0, 1, 0}));
    CHECK(check_two_out_of_three(b, pd, 3, 3, 4, 5, {2, 1}, {1, 0, 0}));

    Bundle g = get_preset("G24");
    auto gpd = pairing_data(g.alg);
    CHECK(check_two_out_of_three(g, gpd, 1, 2, 3, 4, {2}, {1, 1, 0, 1}));
}

TEST_CASE("differentiated_relation_identity") {
    Bundle b = get_preset("G24");
    auto pd = pairing_data(b.alg);
    // the differentiation slot m must be higher with d_m >= 1
    CHECK(check_three_symbols(b, pd, 1, 2, 3, 4, 5, {2}, {1, 1, 0, 1}));
    CHECK(check_three_symbols(b, pd, 1, 2, 4, 3, 2, {3}, {2, 0, 1, 1}));
}

TEST_CASE("pairing_diagonal_exchange_identity") {
    Bundle b = get_preset("G24");
    auto pd = pairing_data(b.alg);
    CHECK(check_m_diagonal(b, pd, 1, 2, 3, 4, 5, {2}, {1, 1, 0, 1}));
    CHECK(check_m_diagonal(b, pd, 2, 2, 3, 3, 1, {3}, {0, 2, 1, 0}));
}

TEST_CASE("five_term_combination_has_no_linear_part") {
    Bundle b = get_preset("G24");
    auto pd = pairing_data(b.alg);
    // would throw "internal" if the linear cancellation failed
    auto q = five_symbols_combination(b, pd, 1, 2, 3, 4, 5, {2}, {1, 1, 0, 1});
    CHECK(q.lin.empty());
}

TEST_CASE("multilinear_relation_extension") {
    Bundle b = get_preset("toric-ex2");
    auto pd = pairing_data(b.alg);
    SparseVec e1{{1, Rat(1)}}, e2{{2, Rat(1)}}, e3{{3, Rat(1)}}, e4{{4, Rat(1)}};
    auto direct = build_relation(b, pd, 1, 2, 3, 4, {1, 1}, {0, 1, 0});
    auto multi = build_relation(b, pd, e1, e2, e3, e4, {1, 1}, {0, 1, 0});
    CHECK(direct == multi);

    // bilinearity in the first argument
    SparseVec mix{{1, Rat(2)}, {2, Rat(-1, 3)}};
    auto lhs = build_relation(b, pd, mix, e2, e3, e4, {1, 1}, {0, 1, 0});
    auto a = build_relation(b, pd, 1, 2, 3, 4, {1, 1}, {0, 1, 0});
    auto c = build_relation(b, pd, 2, 2, 3, 4, {1, 1}, {0, 1, 0});
    a *= Rat(2);
    c *= Rat(-1, 3);
    a += c;
    CHECK(lhs == a);
}

TEST_CASE("relation_stream_respects_thread_env") {
    Bundle b = get_preset("toric-ex2");
    auto pd = pairing_data(b.alg);
    auto base = enumerate_relations(b, pd, {1, 1});
    setenv("QCSOLVE_THREADS", "2", 1);
    auto threaded = enumerate_relations(b, pd, {1, 1});
    unsetenv("QCSOLVE_THREADS");
    REQUIRE(base.size() == threaded.size());
    for (size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].id == threaded[i].id);
        CHECK(base[i].poly == threaded[i].poly);
    }
}
