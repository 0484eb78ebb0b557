#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rqcert/bounds.hpp"
#include "rqcert/errors.hpp"

using namespace rqcert;
using namespace testing_util;

TEST_CASE("bound report flags") {
    const BoundReport ok("b", 1.0, 2.0);
    CHECK(ok.holds);
    CHECK_FALSE(ok.equality);
    const BoundReport eq("b", 2.0, 2.0 + 1e-12);
    CHECK(eq.equality);
    const BoundReport bad("b", 2.0 + 1e-6, 2.0);
    CHECK_FALSE(bad.holds);
    CHECK_THROWS_AS(ok.at("missing"), std::out_of_range);
}

TEST_CASE("a priori sine-squared bound") {
    const auto a = diag({0, 1});
    const auto dec = eigendecompose(a);
    const auto r = apriori_sin2(a, vec({1, 0}), vec({1, 1}), dec);
    CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.equality);
    CHECK(std::abs(r.at("restricted_bound") - r.lhs) <= 1e-15);

    const auto same = apriori_sin2(a, vec({1, 0}), vec({1, 0}), dec);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);

    SUBCASE("interior eigenvector of a random 10x10") {
        std::mt19937_64 rng(10);
        const auto m = random_hermitian<double>(10, rng);
        const auto d = eigendecompose(m);
        const auto y = random_vector<double>(10, rng);
        const auto rep = apriori_sin2(m, d.eigenvectors[4], y, d);
        CHECK(rep.holds);
        CHECK(rep.lhs < rep.rhs);
        // Brute force: |lambda - rho| and the width times sin^2.
        const double rho = oracle::rq(to_oracle(m), to_oracle(y));
        CHECK(std::abs(rep.lhs - std::abs(d.eigenvalues[4] - rho)) <= 1e-12 * m.norm());
        const double t = acute_angle(d.eigenvectors[4], y);
        CHECK(std::abs(rep.rhs - (d.max() - d.min()) * std::sin(t) * std::sin(t)) <= 1e-12 * m.norm());
    }
    CHECK_THROWS_AS(apriori_sin2(a, vec({1, 1}), vec({1, 0}), dec), NotAnEigenvector);
}

TEST_CASE("mixed tangent bound") {
    const auto p = davis_kahan_problem(64, 0.5);
    const auto r = mixed_tan(p.a, Vector<double>::unit(64, 0), p.y);
    CHECK(std::abs(r.lhs - 0.5) <= 1e-12);
    CHECK(std::abs(r.at("projected_rhs") - 0.5) <= 1e-12);
    const double full = std::sqrt(oracle::davis_kahan_residual_ratio(64)) / std::sqrt(3.0);
    CHECK(r.rhs == doctest::Approx(full).epsilon(1e-12));
    CHECK_FALSE(r.equality);

    const auto z = mixed_tan(diag({1, 2}), vec({1, 0}), vec({1, 0}));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK_THROWS_AS(mixed_tan(diag({1, 2}), vec({1, 0}), vec({0, 1})), HypothesisViolation);

    SUBCASE("invariant block gives equality") {
        const auto a = dense({{2.0, 1.0, 0.0, 0.0}, {1.0, 3.0, 0.0, 0.0}, {0.0, 0.0, 7.0, 0.0}, {0.0, 0.0, 0.0, -4.0}});
        const auto dec = eigendecompose(a);
        const auto& x = dec.eigenvectors[1];
        const auto rep = mixed_tan(a, x, vec({0.3, -1.1, 0, 0}));
        CHECK(rep.equality);
    }
}

TEST_CASE("temple bound") {
    SUBCASE("davis-kahan") {
        const auto p = davis_kahan_problem(64, 0.5);
        const auto dec = eigendecompose(p.a);
        const auto r = temple(p.a, p.y, spectrum_context(dec, rayleigh_quotient(p.a, p.y)));
        CHECK(std::abs(r.lhs - 0.25) <= 1e-12);
        CHECK(r.rhs == doctest::Approx(oracle::davis_kahan_residual_ratio(64)).epsilon(1e-13));
        CHECK(r.rhs > 40.0);
        CHECK(r.holds);
    }
    SUBCASE("two eigenvalues give equality") {
        const auto a = diag({0, 1});
        const auto y = vec({1, 1});
        const auto r = temple(a, y, spectrum_context(eigendecompose(a), rayleigh_quotient(a, y)));
        CHECK(r.lhs == doctest::Approx(0.25));
        CHECK(r.equality);
    }
    SUBCASE("near-eigenvector") {
        const auto a = diag({1, 2});
        const auto dec = eigendecompose(a);
        // rho - 1 = 1e-16 is inside the coincidence tolerance: no spectrum-free interval.
        CHECK_THROWS_AS(spectrum_context(dec, rayleigh_quotient(a, vec({1, 1e-8}))), SpectrumCoincidence);
        const auto y = vec({1, 1e-4});
        const auto r = temple(a, y, spectrum_context(dec, rayleigh_quotient(a, y)));
        CHECK(r.holds);
        CHECK(r.equality);
        CHECK(r.rhs == doctest::Approx(1e-8).epsilon(1e-6));
    }
}

TEST_CASE("kato-temple") {
    const auto a = diag({0, 1, 10});
    const auto dec = eigendecompose(a);
    const Vector<double> y = (1.0 / std::sqrt(2.0)) * vec({1, 1, 0});
    const double rho = rayleigh_quotient(a, y);
    for (double lam : {0.0, 1.0}) {
        const auto ctx = spectrum_context(dec, rho, lam);
        const auto r = kato_temple(a, y, ctx);
        CHECK(r.holds);
        // Direct evaluation: R = ||r||^2/||y||^2 = 1/4, interval [-R/(rho-0), R/(1-rho)].
        CHECK(r.at("interval_lower") == doctest::Approx(-0.5));
        CHECK(r.at("interval_upper") == doctest::Approx(0.5));
        CHECK(r.at("rho_minus_lambda") == doctest::Approx(0.5 - lam));
    }
    CHECK_THROWS_AS(kato_temple(a, y, spectrum_context(dec, rho, 10.0)), HypothesisViolation);

    SUBCASE("davis-kahan lambda = 1") {
        const auto p = davis_kahan_problem(64, 0.5);
        const auto d = eigendecompose(p.a);
        const auto r = kato_temple(p.a, p.y, spectrum_context(d, 1.5, 1.0));
        CHECK(std::abs(r.lhs - 0.5) <= 1e-12);
        CHECK(r.rhs == doctest::Approx(oracle::davis_kahan_residual_ratio(64) / 0.5).epsilon(1e-13));
    }
    SUBCASE("eigenvector") {
        const auto r = kato_temple(a, vec({0, 1, 0}), spectrum_context(dec, 1.0, 1.0));
        CHECK(r.lhs == 0.0);
        CHECK(r.holds);
    }
}

TEST_CASE("gap and krylov-weinstein") {
    const auto a = diag({1, 0, -1});
    const auto dec = eigendecompose(a);
    const auto y = vec({1, 1, 1});
    const auto kw = krylov_weinstein(a, y, dec);
    CHECK(kw.lhs == 0.0);
    CHECK(std::abs(kw.rhs - std::sqrt(2.0 / 3.0)) <= 1e-15);
    const auto g = gap_bound(a, y, spectrum_context(dec, 0.0, 0.0));
    CHECK(g.lhs == 0.0);
    CHECK(std::abs(g.rhs - 2.0 / 3.0) <= 1e-15);

    const auto e = krylov_weinstein(a, vec({0, 0, 1}), dec);
    CHECK(e.lhs == 0.0);
    CHECK(e.rhs == 0.0);

    SUBCASE("random 12x12 witness") {
        std::mt19937_64 rng(12);
        for (int k = 0; k < 20; ++k) {
            const auto m = random_hermitian<double>(12, rng);
            const auto d = eigendecompose(m);
            const auto v = random_vector<double>(12, rng);
            const double rho = rayleigh_quotient(m, v);
            double best = 1e300;
            for (double ev : d.eigenvalues) best = std::min(best, std::abs(ev - rho));
            const auto r = krylov_weinstein(m, v, d);
            CHECK(r.holds);
            CHECK(std::abs(r.lhs - best) <= 1e-12 * m.norm());
            CHECK(gap_bound(m, v, spectrum_context(d, rho)).holds);
        }
    }
}

TEST_CASE("improved a posteriori") {
    SUBCASE("davis-kahan values") {
        const auto p = davis_kahan_problem(64, 0.5);
        const auto dec = eigendecompose(p.a);
        const auto r = improved_posteriori(p.a, p.y, dec);
        CHECK(std::abs(r.lhs - 0.25) <= 1e-12);
        CHECK(std::abs(r.rhs - 0.75) <= 1e-12);
        CHECK(r.holds);
        CHECK(r.at("classical_rhs") == doctest::Approx(oracle::davis_kahan_residual_ratio(64)).epsilon(1e-13));
        CHECK(std::abs(r.at("neg_a_lhs_diff")) <= 1e-10);
        CHECK(std::abs(r.at("neg_a_rhs_diff")) <= 1e-10);

        const auto kt = improved_kato_temple(p.a, p.y, dec);
        CHECK(std::abs(kt.lhs - 0.5) <= 1e-12);
        CHECK(std::abs(kt.rhs - 1.5) <= 1e-12);
        const auto kw = improved_krylov_weinstein(p.a, p.y, dec);
        CHECK(std::abs(kw.lhs - 0.5) <= 1e-12);
        CHECK(std::abs(kw.rhs - std::sqrt(3.0) / 2.0) <= 1e-12);
    }
    SUBCASE("shifted davis-kahan still holds") {
        const auto p = davis_kahan_problem(64, 0.5, true);
        const auto r = improved_posteriori(p.a, p.y, eigendecompose(p.a));
        CHECK(r.holds);
        CHECK(r.rhs < r.at("classical_rhs"));
    }
    SUBCASE("2x2 reduces to temple") {
        const auto a = diag({0, 1});
        const auto y = vec({1, 1});
        const auto dec = eigendecompose(a);
        const auto r = improved_posteriori(a, y, dec);
        CHECK(r.lhs == doctest::Approx(0.25));
        CHECK(r.rhs == doctest::Approx(0.25));
        CHECK(r.equality);
    }
    SUBCASE("coincidence") {
        const auto a = diag({1, 0, -1});
        CHECK_THROWS_AS(improved_posteriori(a, vec({1, 1, 1}), eigendecompose(a)), SpectrumCoincidence);
    }
    SUBCASE("dominance on random 10x10") {
        std::mt19937_64 rng(77);
        for (int k = 0; k < 20; ++k) {
            const auto m = random_hermitian<Complex>(10, rng);
            const auto d = eigendecompose(m);
            const auto v = random_vector<Complex>(10, rng);
            const auto rp = improved_posteriori(m, v, d);
            const auto tp = temple(m, v, spectrum_context(d, rayleigh_quotient(m, v)));
            CHECK(rp.rhs <= tp.rhs * (1 + 1e-12));
            const auto ik = improved_krylov_weinstein(m, v, d);
            const auto ck = krylov_weinstein(m, v, d);
            CHECK(ik.rhs <= ck.rhs * (1 + 1e-12));
            CHECK(rp.holds);
            CHECK(ik.holds);
        }
    }
}

TEST_CASE("eigenvector error bounds") {
    SUBCASE("davis-kahan") {
        const auto p = davis_kahan_problem(64, 0.5);
        const auto ev = eigenvector_error_bounds(p.a, p.y, eigendecompose(p.a));
        REQUIRE(ev.tantheta);
        CHECK(std::abs(ev.tantheta->lhs - 1.0 / std::sqrt(3.0)) <= 1e-12);
        CHECK(std::abs(ev.tantheta->rhs - std::sqrt(3.0)) <= 1e-12);
        REQUIRE(ev.sin2theta);
        CHECK(std::abs(ev.sin2theta->lhs - std::sqrt(3.0) / 2.0) <= 1e-12);
        CHECK(std::abs(ev.sin2theta->rhs - std::sqrt(3.0)) <= 1e-12);
        CHECK(ev.classical_sintheta.holds);
        CHECK(std::abs(ev.classical_sintheta.lhs - 0.5) <= 1e-12);
    }
    SUBCASE("counterexample with lambda = 0") {
        const auto a = diag({1, 0, -1});
        const auto ev = eigenvector_error_bounds(a, vec({1, 1, 1}), eigendecompose(a), 0.0);
        CHECK(ev.classical_sintheta.equality);
        CHECK(std::abs(ev.classical_sintheta.lhs - std::sqrt(2.0 / 3.0)) <= 1e-12);
        CHECK(ev.naive_sintheta_violation);
        CHECK_FALSE(ev.sin2theta.has_value());
        CHECK_FALSE(ev.improved_skipped_reason.empty());
    }
    SUBCASE("y in the eigenspace") {
        const auto a = diag({-1, 2, 3});
        const auto ev = eigenvector_error_bounds(a, vec({5, 0, 0}), eigendecompose(a));
        CHECK(ev.classical_sintheta.lhs == 0.0);
    }
    SUBCASE("y orthogonal to the eigenspace") {
        const auto a = diag({-1, 2, 3});
        CHECK_THROWS_AS(eigenvector_error_bounds(a, vec({0, 1, 1}), eigendecompose(a)), HypothesisViolation);
    }
}
