// Reference computations used as test oracles. Deliberately written with
// plain loops and closed forms, sharing no code with the library.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

inline std::vector<cplx> matvec(const Mat& a, const std::vector<cplx>& x) {
    std::vector<cplx> y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

inline cplx dot(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double rq(const Mat& a, const std::vector<cplx>& x) { return dot(x, matvec(a, x)).real() / dot(x, x).real(); }

/// Roots of det(A - t I) for real symmetric 3x3 A, ascending, via the
/// trigonometric solution of the depressed cubic.
inline std::array<double, 3> symmetric_cubic_roots(const std::array<std::array<double, 3>, 3>& a) {
    const double c2 = -(a[0][0] + a[1][1] + a[2][2]);
    const double c1 = a[0][0] * a[1][1] + a[0][0] * a[2][2] + a[1][1] * a[2][2] - a[0][1] * a[1][0] -
                      a[0][2] * a[2][0] - a[1][2] * a[2][1];
    const double c0 = -(a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                        a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                        a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]));
    // t = s - c2/3 gives s^3 + p s + q = 0.
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    std::array<double, 3> t{};
    if (p >= 0.0) {
        t.fill(-c2 / 3.0);
        return t;
    }
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) t[k] = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - c2 / 3.0;
    std::sort(t.begin(), t.end());
    return t;
}

/// Davis-Kahan truncation A = diag(2^k), y = (2^-k), k < n: ||r(y)||^2 / ||y||^2
/// as the sum of (1 - rho 2^-k)^2 over the sum of 4^-k.
inline double davis_kahan_residual_ratio(int n) {
    double num = 0.0, den = 0.0;
    const double rho = 1.5 / (1.0 + std::ldexp(1.0, -n));
    for (int k = 0; k < n; ++k) {
        const double yk = std::ldexp(1.0, -k);
        const double ak = std::ldexp(1.0, k);
        num += (ak * yk - rho * yk) * (ak * yk - rho * yk);
        den += yk * yk;
    }
    return num / den;
}

inline double davis_kahan_rho(int n) { return 1.5 / (1.0 + std::ldexp(1.0, -n)); }

}  // namespace oracle
