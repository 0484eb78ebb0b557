#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rqcert/operator.hpp"
#include "rqcert/vector.hpp"

namespace rqcert {

/// Jacobi stops once ||off(A)||_F <= kJacobiTol * ||A||_F ...
inline constexpr double kJacobiTol = 1e-14;
/// ... or after this many sweeps, whichever comes first.
inline constexpr int kJacobiMaxSweeps = 60;

/// Ascending eigenvalues with orthonormal eigenvectors.
template <Field T>
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Vector<T>> eigenvectors;
    int sweeps = 0;
    /// ||off(A)||_F when Jacobi stopped (0 for diagonal operators).
    double off_norm = 0.0;
    /// Absolute error bound on each eigenvalue: off_norm plus rounding, 0 for
    /// diagonal operators.
    double eigenvalue_error = 0.0;

    std::size_t dim() const noexcept { return eigenvalues.size(); }
    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
    double spectral_radius() const;

    /// Decomposition of -A: eigenvalues negated, order reversed.
    SpectralDecomposition negated() const;
};

/// Cyclic Jacobi for dense operators; sorts the diagonal for Diagonal operators.
template <Field T>
SpectralDecomposition<T> eigendecompose(const HermitianOperator<T>& a);

/// Nearest spectrum points around a Rayleigh quotient.
struct SpectrumContext {
    double rho = 0.0;
    /// Nearest eigenvalue strictly below rho - coincide_tol; empty if none.
    std::optional<double> alpha;
    /// Nearest eigenvalue strictly above rho + coincide_tol; empty if none.
    std::optional<double> beta;
    /// The designated eigenvalue (nearest to rho unless chosen by the caller).
    double lambda = 0.0;
    /// min |eta - rho| over eigenvalues outside lambda's cluster; +inf if none.
    double delta = 0.0;
    /// Eigenvalue nearest to rho (ties go to the smaller one).
    double lambda_nearest = 0.0;
    /// rho lies within coincide_tol of an eigenvalue.
    bool coincides = false;
    std::size_t alpha_multiplicity = 0;
    std::size_t beta_multiplicity = 0;
    std::size_t lambda_multiplicity = 0;
    double coincide_tol = 0.0;
    double cluster_tol = 0.0;
};

/// 1e-10 * max(1, |rho|) + 10 * eigenvalue_error
double coincide_tolerance(double rho, double eigenvalue_error = 0.0);
/// 1e-8 * max(1, |lambda|) + 10 * eigenvalue_error
double cluster_tolerance(double lambda, double eigenvalue_error = 0.0);

/// Throws SpectrumCoincidence when rho coincides with an eigenvalue and no
/// lambda_choice was given. A lambda_choice must match an eigenvalue within
/// cluster_tol, otherwise HypothesisViolation.
SpectrumContext spectrum_context(std::span<const double> eigenvalues, double rho,
                                 std::optional<double> lambda_choice = std::nullopt,
                                 double eigenvalue_error = 0.0);

template <Field T>
SpectrumContext spectrum_context(const SpectralDecomposition<T>& dec, double rho,
                                 std::optional<double> lambda_choice = std::nullopt) {
    return spectrum_context(dec.eigenvalues, rho, lambda_choice, dec.eigenvalue_error);
}

/// Orthonormal eigenvectors for all eigenvalues above rho (the subspace U).
template <Field T>
std::vector<Vector<T>> invariant_subspace_above(const SpectralDecomposition<T>& dec, double rho);

/// Orthonormal eigenvectors for all eigenvalues below rho (U's complement).
template <Field T>
std::vector<Vector<T>> invariant_subspace_below(const SpectralDecomposition<T>& dec, double rho);

/// Eigenvectors whose eigenvalues lie within cluster_tol of lambda.
template <Field T>
std::vector<Vector<T>> eigenspace(const SpectralDecomposition<T>& dec, double lambda);

}  // namespace rqcert
