#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "rqcert/experiments.hpp"

using namespace rqcert;

TEST_CASE("davis-kahan n = 64, eps = 1/2") {
    const auto e = davis_kahan(64, 0.5);
    CHECK(e.pass);
    CHECK(std::abs(e.at("rho") - 1.5) <= 1e-12);
    CHECK(std::abs(e.at("rho") - oracle::davis_kahan_rho(64)) <= 1e-14);
    CHECK(std::abs(e.at("improved_lhs") - 0.25) <= 1e-12);
    CHECK(std::abs(e.at("improved_rhs") - 0.75) <= 1e-12);
    CHECK(e.at("classical_rhs") == doctest::Approx(oracle::davis_kahan_residual_ratio(64)).epsilon(1e-13));
    CHECK(e.at("classical_rhs") > 40.0);
    // Hierarchy diagnostics: U + span{y} is the whole space, the complement choice is S itself.
    CHECK(e.at("pv_upper_r_norm") == doctest::Approx(e.at("r_norm")).epsilon(1e-13));
    CHECK(e.at("pv_lower_r_norm") == doctest::Approx(e.at("ps_r_norm")).epsilon(1e-13));
    for (int n : {8, 16, 32, 64}) {
        const double v = e.at("classical_rhs_n" + std::to_string(n));
        CHECK(v == doctest::Approx(oracle::davis_kahan_residual_ratio(n)).epsilon(1e-12));
    }
    CHECK(e.at("classical_rhs_n8") < e.at("classical_rhs_n16"));
    CHECK(e.at("classical_rhs_n32") < e.at("classical_rhs_n64"));
    for (const auto& r : e.reports) CHECK_MESSAGE(r.holds, r.bound_name);
}

TEST_CASE("davis-kahan small truncations approach the limits") {
    const auto e = davis_kahan(8, 0.5);
    CHECK(e.pass);
    CHECK(std::abs(e.at("rho") - oracle::davis_kahan_rho(8)) <= 1e-14);
    CHECK(std::abs(e.at("improved_lhs") - 0.25) <= 10.0 * std::ldexp(1.0, -8) + 1e-12);
}

TEST_CASE("davis-kahan parameter validation") {
    CHECK_THROWS_AS(davis_kahan(3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(davis_kahan(16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(davis_kahan(16, 0.0), std::invalid_argument);
}

TEST_CASE("shifted davis-kahan") {
    const auto e = davis_kahan(64, 0.5, true);
    CHECK(e.pass);
    CHECK(e.at("x_is_min_eigenvector") == 0.0);
    CHECK(e.report("improved_posteriori")->holds);
    CHECK(e.at("improved_rhs") < e.at("classical_rhs"));
}

TEST_CASE("sin theta counterexample") {
    const auto e = sin_theta_counterexample();
    CHECK(e.pass);
    CHECK(e.at("ps_r_norm") <= 1e-12);
    CHECK(std::abs(e.at("sin2_theta") - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(e.at("residual_ratio") - 2.0 / 3.0) <= 1e-12);
    CHECK(e.at("delta") == 1.0);
    CHECK(e.at("naive_sintheta_violation") == 1.0);
    const auto* c = e.report("classical_sintheta");
    REQUIRE(c);
    CHECK(c->holds);
    CHECK(std::abs(c->lhs - c->rhs) <= 1e-12);
    // The negative control never shows up as a bound report.
    for (const auto& r : e.reports) CHECK(r.holds);
}

TEST_CASE("tightness constructions") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 1234567ull}) {
        const auto e = invariant_subspace_tightness(seed);
        CHECK(e.pass);
        CHECK(e.report("mixed_tan_invariant_block")->equality);
        CHECK(e.report("apriori_sin2_extreme_block")->equality);
        const auto* d = e.report("mixed_tan_degenerate");
        CHECK(d->lhs == 0.0);
        CHECK(std::abs(d->rhs) <= 1e-30);
    }
}

TEST_CASE("random verification is deterministic") {
    const auto a = random_verification(30, 2, 8, FieldKind::Complex, 5);
    const auto b = random_verification(30, 2, 8, FieldKind::Complex, 5);
    CHECK(a.pass);
    REQUIRE(a.tallies.size() == b.tallies.size());
    for (std::size_t i = 0; i < a.tallies.size(); ++i) {
        CHECK(a.tallies[i].checks == b.tallies[i].checks);
        CHECK(a.tallies[i].worst == b.tallies[i].worst);
    }
    CHECK(a.scalars == b.scalars);
    const auto c = random_verification(30, 2, 8, FieldKind::Complex, 6);
    CHECK(c.scalars != a.scalars);
}

TEST_CASE("random verification examples") {
    SUBCASE("1000 real trials") {
        const auto e = random_verification(1000, 2, 12, FieldKind::Real, 7);
        CHECK(e.pass);
        CHECK(e.at("worst_identity_residual") <= 1e-9);
        for (const auto& t : e.tallies) CHECK_MESSAGE(t.ok(), t.name);
    }
    SUBCASE("single 2x2 trial is exact") {
        const auto e = random_verification(1, 2, 2, FieldKind::Real, 3);
        CHECK(e.pass);
        CHECK(e.at("worst_identity_residual") <= 1e-13);
    }
    SUBCASE("complex trials are strict on both sides") {
        const auto e = random_verification(1000, 2, 12, FieldKind::Complex, 7);
        CHECK(e.pass);
        CHECK(e.at("sine_strict_both_frequency") > 0.5);
        CHECK(e.at("tangent_strict_both_frequency") > 0.5);
    }
}

TEST_CASE("per-trial generators depend only on seed and trial") {
    auto a = trial_rng(9, 3);
    auto b = trial_rng(9, 3);
    auto c = trial_rng(9, 4);
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
}

TEST_CASE("eigensolver verification") {
    const auto e = eigensolver_verification(40, 2, 30, FieldKind::Complex, 1);
    CHECK(e.pass);
    CHECK(e.tally("eig_reconstruction")->ok());
}
