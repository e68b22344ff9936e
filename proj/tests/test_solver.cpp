#include "doctest.h"

#include "qcas/presets.hpp"
#include "qcas/solver.hpp"

using namespace qcas;

namespace {

SolutionTable plane_seed() {
    SolutionTable t;
    t.values[NVar{{1}, {2}}] = Rat(1);
    t.pins.insert(NVar{{1}, {2}});
    t.status = "seed";
    return t;
}

}  // namespace

TEST_CASE("plane_reconstruction_matches_the_independent_recursion") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    auto res = reconstruct(b, pd, plane_seed(), Rat(6), "strict");
    REQUIRE(res.ok);
    CHECK(res.table.status == "complete");
    auto oracle = kontsevich_oracle(6);
    for (long long beta = 1; beta <= 6; ++beta) {
        IVec d{3 * beta - 1};
        REQUIRE(res.table.values.count(NVar{{beta}, d}));
        CHECK(res.table.values.at(NVar{{beta}, d}) == oracle[beta - 1]);
    }
}

TEST_CASE("assembled_stage_system_shape") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    auto sys = assemble_system(b, pd, {2}, plane_seed());
    CHECK(sys.unknowns == std::vector<NVar>{NVar{{2}, {5}}});
    REQUIRE(sys.rows.size() == 1);
    CHECK_FALSE(sys.rows[0].tag.is_pin);
    // N(2;5) = N(1;2)^2 lands on the right-hand side
    CHECK(sys.rows[0].rhs == Rat(1));
    CHECK(sys.rows[0].a.at(0) == Rat(1));
}

TEST_CASE("missing_lower_values_are_reported_by_name") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    SolutionTable empty;
    CHECK_THROWS_WITH_AS(assemble_system(b, pd, {2}, empty),
                         doctest::Contains("N(1;2)"), QcasError);
}

TEST_CASE("exact_elimination_reports_minimal_infeasible_core") {
    LinearSystem sys;
    sys.beta = {1};
    NVar x{{1}, {0}}, y{{1}, {1}};
    sys.unknowns = {x, y};
    auto rel = [](long long n) {
        RowTag t;
        t.rel = RelationId{{1, 1, 2, 2}, {1}, {n}, 1};
        return t;
    };
    // x + y = 1, x - y = 0 is fine; adding x = 3 breaks it
    sys.rows.push_back({{{0, Rat(1)}, {1, Rat(1)}}, Rat(1), rel(0)});
    sys.rows.push_back({{{0, Rat(1)}, {1, Rat(-1)}}, Rat(0), rel(1)});
    std::map<NVar, Rat> sol;
    auto rep = solve_system(sys, sol);
    CHECK(rep.status == "unique");
    CHECK(sol.at(x) == Rat(1, 2));
    CHECK(sol.at(y) == Rat(1, 2));

    RowTag pin;
    pin.is_pin = true;
    pin.pin = x;
    sys.rows.push_back({{{0, Rat(1)}}, Rat(3), pin});
    sol.clear();
    auto bad = solve_system(sys, sol);
    CHECK(bad.status == "inconsistent");
    CHECK(bad.residual != 0);
    // every pair of the three rows is feasible, so no row can be dropped
    CHECK(bad.witness.size() == 3);
}

TEST_CASE("underdetermined_stage_reports_free_variables") {
    LinearSystem sys;
    sys.beta = {1};
    NVar x{{1}, {0}}, y{{1}, {1}};
    sys.unknowns = {x, y};
    RowTag t;
    t.rel = RelationId{{1, 1, 2, 2}, {1}, {0}, 1};
    sys.rows.push_back({{{0, Rat(1)}, {1, Rat(1)}}, Rat(1), t});
    std::map<NVar, Rat> sol;
    auto rep = solve_system(sys, sol);
    CHECK(rep.status == "underdetermined");
    REQUIRE(rep.free_vars.size() == 1);
    CHECK(sol.empty());  // nothing is pinned down alone
}

TEST_CASE("strict_policy_rejects_wide_seed_degrees") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    SolutionTable t = plane_seed();
    t.values[NVar{{2}, {5}}] = Rat(1);
    t.pins.insert(NVar{{2}, {5}});
    CHECK_THROWS_AS(reconstruct(b, pd, t, Rat(3), "strict"), QcasError);
    // under the explicit-pins policy the same table is fine: the extra pin
    // agrees with the value the relations force anyway
    auto res = reconstruct(b, pd, t, Rat(3), "pins");
    CHECK(res.ok);
    CHECK(res.table.status == "complete");
}

TEST_CASE("pin_conflicts_are_caught_as_inconsistent") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    SolutionTable t = plane_seed();
    t.values[NVar{{2}, {5}}] = Rat(7);
    t.pins.insert(NVar{{2}, {5}});
    auto res = reconstruct(b, pd, t, Rat(3), "pins");
    CHECK_FALSE(res.ok);
    CHECK(res.table.status == "halted-inconsistent");
    REQUIRE_FALSE(res.reports.empty());
    const auto& last = res.reports.back();
    CHECK(last.status == "inconsistent");
    CHECK(last.residual != 0);
    CHECK(last.witness.size() >= 2);
}

TEST_CASE("zero_policy_records_defaulted_frees") {
    // only one of the two quadric rulings is pinned; the other class is not
    // reachable from relations, so the zero policy has to default it
    Bundle b = get_preset("P1xP1");
    auto pd = pairing_data(b.alg);
    SolutionTable t;
    t.values[NVar{{1, 0}, {1}}] = Rat(1);
    auto res = reconstruct(b, pd, t, Rat(4), "zero");
    REQUIRE(res.ok);
    CHECK(res.table.status == "complete");
    CHECK(res.table.free_vars == std::vector<NVar>{NVar{{0, 1}, {1}}});
    CHECK(res.table.values.at(NVar{{0, 1}, {1}}) == Rat(0));
    // the degenerate single-ruling table still satisfies every relation
    CHECK(verify_table(b, pd, res.table, Rat(4), false).ok);
}

TEST_CASE("seed_relation_violations_halt_before_any_stage") {
    Bundle b = get_preset("toric-ex2");
    auto pd = pairing_data(b.alg);
    SolutionTable t;
    for (const auto& v : seed_variables(b).vars) t.values[v] = Rat(0);
    // a geometrically impossible assignment: relations force products of these
    t.values[NVar{{1, 0}, {0, 0, 1}}] = Rat(1);
    t.values[NVar{{1, 0}, {2, 0, 0}}] = Rat(5);
    for (auto& [v, val] : t.values) t.pins.insert(v);
    auto res = reconstruct(b, pd, t, Rat(4), "pins");
    CHECK_FALSE(res.ok);
    CHECK(res.table.status == "halted-seed-check");
    CHECK_FALSE(res.seed_violations.empty());
    CHECK(res.reports.empty());
}

TEST_CASE("verification_pinpoints_the_first_broken_relation") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    auto res = reconstruct(b, pd, plane_seed(), Rat(4), "strict");
    REQUIRE(res.ok);
    CHECK(verify_table(b, pd, res.table, Rat(4), false).ok);

    auto corrupt = res.table;
    corrupt.values[NVar{{3}, {8}}] += Rat(1);
    auto v = verify_table(b, pd, corrupt, Rat(4), false);
    CHECK_FALSE(v.ok);
    CHECK(v.value != 0);
    CHECK(v.id.beta == IVec{3});
}

TEST_CASE("rescaling_is_a_solution_symmetry") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    auto res = reconstruct(b, pd, plane_seed(), Rat(4), "strict");
    REQUIRE(res.ok);
    auto scaled = rescale_table(res.table, {Rat(3, 2)});
    CHECK(scaled.values.at(NVar{{2}, {5}}) == Rat(9, 4));
    CHECK(verify_table(b, pd, scaled, Rat(4), false).ok);
    CHECK_THROWS_AS(rescale_table(res.table, {Rat(0)}), QcasError);
    CHECK_THROWS_AS(rescale_table(res.table, {Rat(1), Rat(1)}), QcasError);
}

TEST_CASE("five_term_residual_vanishes_on_a_solution") {
    Bundle b = get_preset("P2");
    auto pd = pairing_data(b.alg);
    auto res = reconstruct(b, pd, plane_seed(), Rat(5), "strict");
    REQUIRE(res.ok);
    CHECK(fsr_residual(b, pd, res.table, 1, 2, 1, 2, 2, {3}, {7}) == Rat(0));

    auto corrupt = res.table;
    corrupt.values[NVar{{2}, {5}}] = Rat(2);
    CHECK_THROWS_AS(fsr_residual(b, pd, corrupt, 1, 2, 1, 2, 2, {3}, {7}), QcasError);
}

TEST_CASE("table_evaluation_modes") {
    QuadPoly p;
    NVar x{{1}, {2}};
    p.add_lin(x, Rat(2));
    SolutionTable t;
    CHECK(evaluate_poly(p, t, true) == Rat(0));
    CHECK_THROWS_WITH_AS(evaluate_poly(p, t, false), doctest::Contains("N(1;2)"), QcasError);
    t.values[x] = Rat(5);
    CHECK(evaluate_poly(p, t, false) == Rat(10));
}
