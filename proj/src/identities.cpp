#include "rqcert/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rqcert/errors.hpp"

namespace rqcert {

const char* to_string(EqualityCase c) {
    switch (c) {
        case EqualityCase::LowerAttained: return "lower_attained";
        case EqualityCase::UpperAttained: return "upper_attained";
        case EqualityCase::StrictBoth: return "strict_both";
        case EqualityCase::Unclassified: return "unclassified";
    }
    return "unclassified";
}

double IdentityCheck::error() const { return std::abs(lhs - rhs); }

template <Field T>
double identity_scale(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y) {
    const double v = std::max({1.0, norm(x), norm(y)});
    return std::max(1.0, a.norm()) * v * v;
}

namespace {

constexpr double kRealRatioTol = 1e-10;
constexpr double kNegligibleTol = 1e-14;
constexpr double kRightAngleTol = 1e-8;

template <Field T>
void require_in_span(const TwoDimRestriction<T>& s, const Vector<T>& probe) {
    const double np = norm(probe);
    if (!(np > 0.0)) throw ZeroVector("probe vector must be nonzero");
    if (s.distance_from(probe) > 1e-10 * np) {
        throw HypothesisViolation("probe vector does not lie in span{x, y}");
    }
}

template <Field T>
bool is_real_ratio(T z) {
    return std::abs(imag_part(z)) <= kRealRatioTol * std::abs(z);
}

}  // namespace

template <Field T>
IdentityCheck residual_gap_identity(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y,
                                    const Vector<T>& probe) {
    const auto s = restrict_2d(a, x, y);
    require_in_span(s, probe);
    const double rho = rayleigh_quotient(a, probe);
    const double np = norm(probe);
    const double ps_r = s.projected_norm(residual(a, probe));
    return {(s.mu - rho) * (rho - s.nu), ps_r * ps_r / (np * np)};
}

template <Field T>
Sin2Check sin2_identity(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y,
                        const Vector<T>& probe) {
    const auto s = restrict_2d(a, x, y);
    require_in_span(s, probe);
    const auto p1 = angle_parts(probe, s.u1);
    const auto p2 = angle_parts(probe, s.u2);
    Sin2Check out;
    out.lhs = 0.5 * s.gap() * 2.0 * p1.sin * p1.cos;
    out.lhs_alt = 0.5 * s.gap() * 2.0 * p2.sin * p2.cos;
    out.rhs = s.projected_norm(residual(a, probe)) / norm(probe);
    return out;
}

template <Field T>
TangentBoundResult<T> tangent_bounds(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y) {
    TangentBoundResult<T> out;
    out.scale = identity_scale(a, x, y);
    const auto ap = angle_parts(x, y);
    if (ap.sin < kAngleTol) throw DegenerateSubspace("tangent bounds need a positive angle between x and y");
    const auto s = restrict_2d(a, x, y);

    const Vector<T> rx = residual(a, x);
    const Vector<T> ry = residual(a, y);
    const double px = s.projected_norm(rx) / norm(x);
    const double py = s.projected_norm(ry) / norm(y);
    out.angle = ap.radians();
    out.delta_rho = std::abs(rayleigh_quotient(a, x) - rayleigh_quotient(a, y));
    out.a = inner(x, ry);
    out.b = inner(rx, y);
    out.c = inner(x, y);

    if (out.angle >= std::numbers::pi / 2 - kRightAngleTol) {
        out.tangent_unbounded = true;
        out.xi_minus = 0.0;
        out.xi_plus = std::numeric_limits<double>::infinity();
    } else {
        const double tan = ap.sin / ap.cos;
        out.xi_minus = std::abs(px - py) * tan;
        out.xi_plus = (px + py) * tan;
    }

    const double tiny = kNegligibleTol * out.scale;
    const double abs_a = std::abs(out.a);
    const double abs_b = std::abs(out.b);
    if (abs_a < tiny && abs_b < tiny) {
        out.equality_case = EqualityCase::Unclassified;
    } else if (abs_a < tiny || abs_b < tiny) {
        // One of a/b, b/a is zero, hence real and >= 0.
        out.equality_case = EqualityCase::LowerAttained;
    } else {
        const T ratio = out.a * conjugate(out.b);
        if (is_real_ratio(ratio)) {
            out.equality_case = real_part(ratio) >= 0.0 ? EqualityCase::LowerAttained : EqualityCase::UpperAttained;
        } else {
            out.equality_case = EqualityCase::StrictBoth;
        }
    }
    return out;
}

template <Field T>
SineBoundResult<T> sine_bounds(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y) {
    SineBoundResult<T> out;
    out.scale = identity_scale(a, x, y);
    const auto ap = angle_parts(x, y);
    if (ap.sin < kAngleTol) throw DegenerateSubspace("sine bounds need a positive angle between x and y");
    const auto s = restrict_2d(a, x, y);

    out.angle = ap.radians();
    out.gap = s.gap();
    out.angle_x_u1 = acute_angle(x, s.u1);
    out.angle_y_u1 = acute_angle(y, s.u1);
    out.angle_x_u2 = acute_angle(x, s.u2);
    out.angle_y_u2 = acute_angle(y, s.u2);

    const double sin_xy = ap.sin;
    const double diff1 = std::abs(std::sin(out.angle_x_u1 - out.angle_y_u1));
    const double sum1 = std::abs(std::sin(out.angle_x_u1 + out.angle_y_u1));
    const double diff2 = std::abs(std::sin(out.angle_x_u2 - out.angle_y_u2));
    const double sum2 = std::abs(std::sin(out.angle_x_u2 + out.angle_y_u2));
    out.psi_minus = out.gap * diff1 * sin_xy;
    out.psi_plus = out.gap * sum1 * sin_xy;
    out.psi_minus_alt = out.gap * diff2 * sin_xy;
    out.psi_plus_alt = out.gap * sum2 * sin_xy;
    out.sum_difference_identity = out.gap * std::sin(out.angle_x_u1 + out.angle_y_u1) * diff1;
    out.delta_rho = std::abs(rayleigh_quotient(a, x) - rayleigh_quotient(a, y));

    out.C = inner(x, s.u1) * inner(s.u2, x) * inner(s.u1, y) * inner(y, s.u2);
    const double nx = norm(x);
    const double ny = norm(y);
    const double abs_c = std::abs(out.C);
    if (abs_c <= kNegligibleTol * nx * nx * ny * ny) {
        out.equality_case = EqualityCase::UpperAttained;
    } else if (is_real_ratio(out.C)) {
        out.equality_case = real_part(out.C) > 0.0 ? EqualityCase::UpperAttained : EqualityCase::LowerAttained;
    } else {
        out.equality_case = EqualityCase::StrictBoth;
    }
    return out;
}

template <Field T>
bool is_certified_eigenvector(const HermitianOperator<T>& a, const Vector<T>& x) {
    return norm(residual(a, x)) <= 1e-10 * a.norm() * norm(x);
}

template <Field T>
EigenvectorIdentities eigenvector_identities(const HermitianOperator<T>& a, const Vector<T>& x,
                                             const Vector<T>& y) {
    if (!is_certified_eigenvector(a, x)) throw NotAnEigenvector("x is not an eigenvector of A within tolerance");
    EigenvectorIdentities out;
    out.lambda = rayleigh_quotient(a, x);
    out.rho_y = rayleigh_quotient(a, y);
    out.delta_rho = std::abs(out.lambda - out.rho_y);

    std::optional<TwoDimRestriction<T>> s;
    try {
        s = restrict_2d(a, x, y);
    } catch (const DegenerateSubspace&) {
        out.degenerate = true;
        out.eta = out.lambda;
        out.tan_mixed = 0.0;
        out.tan_from_residual = 0.0;
        return out;
    }

    const auto ap = angle_parts(x, y);
    out.angle = ap.radians();
    out.eta = std::abs(s->mu - out.lambda) >= std::abs(s->nu - out.lambda) ? s->mu : s->nu;
    out.sine2_gap = s->gap() * ap.sin * ap.sin;
    const double ps_r = s->projected_norm(residual(a, y)) / norm(y);
    if (out.angle < std::numbers::pi / 2 - kRightAngleTol) {
        out.tan_theta = ap.sin / ap.cos;
        out.tan_mixed = ps_r * out.tan_theta;
    } else {
        out.tan_theta = std::numeric_limits<double>::infinity();
    }
    const double eta_gap = std::abs(out.eta - out.rho_y);
    if (eta_gap > 1e-12 * std::max({1.0, std::abs(out.eta), std::abs(out.rho_y)})) {
        out.tan_from_residual = ps_r / eta_gap;
    }
    return out;
}

#define RQCERT_INSTANTIATE_IDENTITIES(T)                                                                    \
    template double identity_scale<T>(const HermitianOperator<T>&, const Vector<T>&, const Vector<T>&);     \
    template IdentityCheck residual_gap_identity<T>(const HermitianOperator<T>&, const Vector<T>&,          \
                                                    const Vector<T>&, const Vector<T>&);                    \
    template Sin2Check sin2_identity<T>(const HermitianOperator<T>&, const Vector<T>&, const Vector<T>&,     \
                                        const Vector<T>&);                                                  \
    template TangentBoundResult<T> tangent_bounds<T>(const HermitianOperator<T>&, const Vector<T>&,         \
                                                     const Vector<T>&);                                     \
    template SineBoundResult<T> sine_bounds<T>(const HermitianOperator<T>&, const Vector<T>&,               \
                                               const Vector<T>&);                                           \
    template bool is_certified_eigenvector<T>(const HermitianOperator<T>&, const Vector<T>&);               \
    template EigenvectorIdentities eigenvector_identities<T>(const HermitianOperator<T>&, const Vector<T>&,  \
                                                             const Vector<T>&);

RQCERT_INSTANTIATE_IDENTITIES(double)
RQCERT_INSTANTIATE_IDENTITIES(Complex)

#undef RQCERT_INSTANTIATE_IDENTITIES

}  // namespace rqcert
