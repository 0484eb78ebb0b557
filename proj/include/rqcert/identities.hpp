#pragma once

#include <optional>

#include "rqcert/core.hpp"

namespace rqcert {

/// Which side of a two-sided bound is attained.
enum class EqualityCase { LowerAttained, UpperAttained, StrictBoth, Unclassified };

const char* to_string(EqualityCase c);

/// max(1, ||A||_F) * max(1, ||x||, ||y||)^2, the absolute scale used by identity checks.
template <Field T>
double identity_scale(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y);

/// Two evaluations of the same quantity by independent routes.
struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double error() const;
};

/// [mu - rho(p)][rho(p) - nu] against ||P_S r(p)||^2 / ||p||^2, for p in S = span{x, y}.
template <Field T>
IdentityCheck residual_gap_identity(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y,
                                    const Vector<T>& probe);

struct Sin2Check {
    /// (mu - nu)/2 * sin(2 angle(p, u1)).
    double lhs = 0.0;
    /// (mu - nu)/2 * sin(2 angle(p, u2)).
    double lhs_alt = 0.0;
    /// ||P_S r(p)|| / ||p||.
    double rhs = 0.0;
};

template <Field T>
Sin2Check sin2_identity(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y,
                        const Vector<T>& probe);

template <Field T>
struct TangentBoundResult {
    double xi_minus = 0.0;
    double xi_plus = 0.0;
    double delta_rho = 0.0;
    /// <x, r(y)>, <r(x), y>, <x, y>.
    T a{};
    T b{};
    T c{};
    EqualityCase equality_case = EqualityCase::Unclassified;
    /// The angle is within 1e-8 of pi/2, where tan is unbounded; xi_plus is +inf.
    bool tangent_unbounded = false;
    double angle = 0.0;
    double scale = 1.0;
};

/// Xi_- <= |rho(x) - rho(y)| <= Xi_+ with the equality classification.
/// Requires 0 < angle(x, y); throws DegenerateSubspace when x, y are collinear.
template <Field T>
TangentBoundResult<T> tangent_bounds(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y);

template <Field T>
struct SineBoundResult {
    double psi_minus = 0.0;
    double psi_plus = 0.0;
    /// Same bounds evaluated with u2 in place of u1.
    double psi_minus_alt = 0.0;
    double psi_plus_alt = 0.0;
    double delta_rho = 0.0;
    /// (mu - nu) sin(phi_x + phi_y) |sin(phi_x - phi_y)|, equal to delta_rho.
    double sum_difference_identity = 0.0;
    /// <x,u1><u2,x><u1,y><y,u2>.
    T C{};
    EqualityCase equality_case = EqualityCase::Unclassified;
    double angle = 0.0;
    double angle_x_u1 = 0.0;
    double angle_y_u1 = 0.0;
    double angle_x_u2 = 0.0;
    double angle_y_u2 = 0.0;
    double gap = 0.0;
    double scale = 1.0;
};

/// Psi_- <= |rho(x) - rho(y)| <= Psi_+.
///
/// Equality: C >= 0 attains the upper side, C <= 0 the lower side, a non-real C
/// makes both strict.
template <Field T>
SineBoundResult<T> sine_bounds(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y);

struct EigenvectorIdentities {
    double lambda = 0.0;
    double rho_y = 0.0;
    /// |lambda - rho(y)|
    double delta_rho = 0.0;
    /// (mu - nu) sin^2 theta
    double sine2_gap = 0.0;
    /// ||P_S r(y)|| / ||y|| * tan theta, when theta < pi/2.
    std::optional<double> tan_mixed;
    /// ||P_S r(y)|| / (|eta - rho(y)| ||y||), when eta != rho(y).
    std::optional<double> tan_from_residual;
    double tan_theta = 0.0;
    double eta = 0.0;
    double angle = 0.0;
    /// y collinear with x; every quantity is zero.
    bool degenerate = false;
};

/// Identities that hold when x is an eigenvector of A; throws NotAnEigenvector
/// if ||r(x)|| > 1e-10 ||A||_F ||x||.
template <Field T>
EigenvectorIdentities eigenvector_identities(const HermitianOperator<T>& a, const Vector<T>& x,
                                             const Vector<T>& y);

/// true when ||r(x)|| <= 1e-10 ||A||_F ||x||.
template <Field T>
bool is_certified_eigenvector(const HermitianOperator<T>& a, const Vector<T>& x);

}  // namespace rqcert
