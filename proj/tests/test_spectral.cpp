#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rqcert/errors.hpp"
#include "rqcert/spectral.hpp"

using namespace rqcert;
using namespace testing_util;

namespace {

template <Field T>
void check_decomposition(const HermitianOperator<T>& a, const SpectralDecomposition<T>& dec) {
    const std::size_t n = a.dim();
    double recon = 0.0, orth = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        auto av = a.apply(dec.eigenvectors[j]);
        av.axpy(T(-dec.eigenvalues[j]), dec.eigenvectors[j]);
        recon += norm(av) * norm(av);
        for (std::size_t k = 0; k < n; ++k) {
            const T g = inner(dec.eigenvectors[j], dec.eigenvectors[k]) - T(j == k ? 1.0 : 0.0);
            orth += abs2(g);
        }
        if (j > 0) CHECK(dec.eigenvalues[j - 1] <= dec.eigenvalues[j]);
    }
    CHECK(std::sqrt(recon) <= 1e-10 * a.norm());
    CHECK(std::sqrt(orth) <= 1e-12 * static_cast<double>(n));
}

}  // namespace

TEST_CASE("diagonal operators decompose directly") {
    const auto dec = eigendecompose(diag({3, 1, 2}));
    CHECK(dec.eigenvalues == std::vector<double>{1, 2, 3});
    CHECK(dec.eigenvectors[0] == Vector<double>::unit(3, 1));
    CHECK(dec.eigenvalue_error == 0.0);
}

TEST_CASE("swap matrix") {
    const auto dec = eigendecompose(dense({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("3x3 eigenvalues match the characteristic polynomial") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_hermitian<double>(3, rng);
        std::array<std::array<double, 3>, 3> m{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = a.to_dense()(i, j);
        const auto roots = oracle::symmetric_cubic_roots(m);
        const auto dec = eigendecompose(a);
        const double s = std::max(std::abs(roots[0]), std::abs(roots[2]));
        for (int k = 0; k < 3; ++k) CHECK(std::abs(dec.eigenvalues[k] - roots[k]) <= 1e-9 * s);
    }
}

TEST_CASE("reconstruction and orthogonality over random dims") {
    std::mt19937_64 rng(99);
    for (std::size_t n = 2; n <= 50; n += 4) {
        const auto ar = random_hermitian<double>(n, rng);
        check_decomposition(ar, eigendecompose(ar));
        const auto ac = random_hermitian<Complex>(n, rng);
        check_decomposition(ac, eigendecompose(ac));
    }
}

TEST_CASE("repeated eigenvalues") {
    const auto a = dense({{2.0, 0.0, 0.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}});
    const auto dec = eigendecompose(a);
    check_decomposition(a, dec);
    CHECK(std::abs(dec.eigenvalues[0]) <= 1e-15);
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(eigenspace(dec, 2.0).size() == 2);
}

TEST_CASE("spectrum context") {
    const auto dec = eigendecompose(diag({1, 0, -1}));
    CHECK_THROWS_AS(spectrum_context(dec, 0.0), SpectrumCoincidence);
    const auto ctx = spectrum_context(dec, 0.0, 0.0);
    CHECK(ctx.delta == 1.0);
    CHECK(ctx.lambda == 0.0);
    CHECK(ctx.coincides);

    const auto c2 = spectrum_context(eigendecompose(diag({1, 2})), 1.5);
    CHECK(c2.alpha == 1.0);
    CHECK(c2.beta == 2.0);
    CHECK(*c2.alpha <= c2.lambda_nearest);
    CHECK(c2.lambda_nearest <= *c2.beta);
    // Tie goes to the smaller eigenvalue.
    CHECK(c2.lambda_nearest == 1.0);

    SUBCASE("one-sided") {
        const auto below = spectrum_context(eigendecompose(diag({1, 2})), 0.5);
        CHECK_FALSE(below.alpha.has_value());
        CHECK(below.beta == 1.0);
    }
    SUBCASE("davis-kahan") {
        std::vector<double> d;
        for (int k = 0; k < 64; ++k) d.push_back(std::ldexp(1.0, k));
        const auto c = spectrum_context(eigendecompose(HermitianOperator<double>::diagonal(d)), 1.5);
        CHECK(c.alpha == 1.0);
        CHECK(c.beta == 2.0);
        CHECK(c.alpha_multiplicity == 1);
    }
    SUBCASE("multiplicities") {
        const auto c = spectrum_context(eigendecompose(diag({1, 1, 3, 3, 3})), 2.0);
        CHECK(c.alpha_multiplicity == 2);
        CHECK(c.beta_multiplicity == 3);
    }
    SUBCASE("designated lambda must be an eigenvalue") {
        CHECK_THROWS_AS(spectrum_context(eigendecompose(diag({1, 2})), 1.5, 1.7), HypothesisViolation);
    }
}

TEST_CASE("invariant subspaces") {
    const auto dec = eigendecompose(diag({1, 0, -1}));
    const auto u = invariant_subspace_above(dec, 0.5);
    REQUIRE(u.size() == 1);
    CHECK(u[0] == Vector<double>::unit(3, 0));
    CHECK(invariant_subspace_below(dec, 0.5).size() == 2);
    CHECK_THROWS_AS(invariant_subspace_above(dec, 0.0), SpectrumCoincidence);

    SUBCASE("davis-kahan complement is e1") {
        std::vector<double> d, y;
        for (int k = 0; k < 64; ++k) {
            d.push_back(std::ldexp(1.0, k));
            y.push_back(std::ldexp(1.0, -k));
        }
        const auto dk = eigendecompose(HermitianOperator<double>::diagonal(d));
        const auto up = invariant_subspace_above(dk, 1.5);
        CHECK(up.size() == 63);
        const Vector<double> yv(y);
        const auto x = yv - project_onto_span<double>(up, yv);
        CHECK(norm(x - Vector<double>::unit(64, 0)) <= 1e-15);
    }

    SUBCASE("random 6x6 invariance") {
        std::mt19937_64 rng(6);
        const auto a = random_hermitian<double>(6, rng);
        const auto dk = eigendecompose(a);
        const double split = 0.5 * (dk.eigenvalues[2] + dk.eigenvalues[3]);
        const auto up = invariant_subspace_above(dk, split);
        CHECK(up.size() == 3);
        // ||(I - P_U) A P_U|| via the columns A u.
        for (const auto& uk : up) {
            const auto au = a.apply(uk);
            const auto off = au - project_onto_span<double>(up, au);
            CHECK(norm(off) <= 1e-10 * a.norm());
        }
        // Variational principle on the complement.
        for (int k = 0; k < 20; ++k) {
            const auto y = random_vector<double>(6, rng);
            const auto x = y - project_onto_span<double>(up, y);
            CHECK(rayleigh_quotient(a, x) <= split + 1e-12 * a.norm());
        }
    }
}

TEST_CASE("negated decomposition mirrors the spectrum") {
    const auto dec = eigendecompose(diag({3, -1, 2}));
    const auto neg = dec.negated();
    CHECK(neg.eigenvalues == std::vector<double>{-3, -2, 1});
}
