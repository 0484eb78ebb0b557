#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rqcert/core.hpp"
#include "rqcert/spectral.hpp"

namespace rqcert {

/// Relative tolerance of the holds/equality flags: 1e-10 * max(1, |lhs|, |rhs|).
inline constexpr double kBoundTol = 1e-10;

/// One evaluated inequality lhs <= rhs with the quantities that went into it.
struct BoundReport {
    std::string bound_name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool equality = false;
    /// Insertion-ordered, so serialized reports diff cleanly.
    std::vector<std::pair<std::string, double>> ingredients;

    BoundReport() = default;
    BoundReport(std::string name, double lhs_value, double rhs_value);

    void add(std::string name, double value) { ingredients.emplace_back(std::move(name), value); }
    std::optional<double> ingredient(std::string_view name) const;
    /// Throws std::out_of_range when absent.
    double at(std::string_view name) const;
    double tolerance() const;
};

/// |lambda - rho(y)| <= (max Sigma - min Sigma) sin^2 angle(x, y), x an eigenvector.
template <Field T>
BoundReport apriori_sin2(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y,
                         const SpectralDecomposition<T>& dec);

/// |lambda - rho(y)| <= ||r(y)||/||y|| tan angle(x, y); equality iff span{x, y} is A-invariant.
template <Field T>
BoundReport mixed_tan(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y);

/// (beta - rho)(rho - alpha) <= ||r(y)||^2 / ||y||^2.
template <Field T>
BoundReport temple(const HermitianOperator<T>& a, const Vector<T>& y, const SpectrumContext& ctx);

/// -R/(rho - a) <= rho - lambda <= R/(b - rho), R = ||r||^2/||y||^2, a = alpha, b = beta.
/// lhs/rhs hold |rho - lambda| and the applicable side; the interval is in the ingredients.
template <Field T>
BoundReport kato_temple(const HermitianOperator<T>& a, const Vector<T>& y, const SpectrumContext& ctx);

/// |lambda - rho| <= ||r||^2 / (delta ||y||^2) for the designated lambda of ctx.
template <Field T>
BoundReport gap_bound(const HermitianOperator<T>& a, const Vector<T>& y, const SpectrumContext& ctx);

/// min over the spectrum of |lambda - rho| <= ||r(y)|| / ||y||.
template <Field T>
BoundReport krylov_weinstein(const HermitianOperator<T>& a, const Vector<T>& y,
                             const SpectralDecomposition<T>& dec);

/// Temple with the projected residual: (beta - rho)(rho - alpha) <= ||P_S r(y)||^2/||y||^2,
/// S = span{(I - P_U) y, y}, U the invariant subspace above rho.
template <Field T>
BoundReport improved_posteriori(const HermitianOperator<T>& a, const Vector<T>& y,
                                const SpectralDecomposition<T>& dec);

template <Field T>
BoundReport improved_kato_temple(const HermitianOperator<T>& a, const Vector<T>& y,
                                 const SpectralDecomposition<T>& dec,
                                 std::optional<double> lambda_choice = std::nullopt);

template <Field T>
BoundReport improved_krylov_weinstein(const HermitianOperator<T>& a, const Vector<T>& y,
                                      const SpectralDecomposition<T>& dec);

struct EigenvectorBoundReports {
    /// sin(2 theta) <= 2/(beta - lambda) ||P_S r||/||y||; empty if lambda is not extreme.
    std::optional<BoundReport> sin2theta;
    /// tan(theta) <= ||P_S r||/((beta - rho) ||y||); empty if lambda is not extreme.
    std::optional<BoundReport> tantheta;
    /// sin(theta) <= ||r||/(delta ||y||).
    BoundReport classical_sintheta;
    /// sin(theta) > ||P_S r||/(delta ||y||): the projected residual must not
    /// simply replace ||r|| in the classical bound. Not a certified inequality.
    bool naive_sintheta_violation = false;
    std::string improved_skipped_reason;
};

/// Angle between y and the eigenspace of lambda (default: the smallest eigenvalue).
template <Field T>
EigenvectorBoundReports eigenvector_error_bounds(const HermitianOperator<T>& a, const Vector<T>& y,
                                                 const SpectralDecomposition<T>& dec,
                                                 std::optional<double> lambda_choice = std::nullopt);

}  // namespace rqcert
