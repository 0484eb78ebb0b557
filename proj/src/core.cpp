#include "rqcert/core.hpp"

#include <algorithm>
#include <cmath>

namespace rqcert {

template <Field T>
T inner(const Vector<T>& x, const Vector<T>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("inner product of vectors with different lengths");
    T acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += conjugate(x[i]) * y[i];
    return acc;
}

template <Field T>
double norm(const Vector<T>& x) {
    // Scaled accumulation so entries around 2^-600 or 2^600 do not under/overflow.
    double scale = 0.0;
    for (const T& v : x) scale = std::max({scale, std::abs(real_part(v)), std::abs(imag_part(v))});
    if (scale == 0.0) return 0.0;
    double acc = 0.0;
    for (const T& v : x) acc += abs2(T(v / scale));
    return scale * std::sqrt(acc);
}

namespace {

template <Field T>
double require_nonzero(const Vector<T>& x, const char* what) {
    const double n = norm(x);
    if (!(n > 0.0)) throw ZeroVector(std::string(what) + " must be nonzero");
    return n;
}

}  // namespace

template <Field T>
double rayleigh_quotient(const HermitianOperator<T>& a, const Vector<T>& x) {
    const double nx = require_nonzero(x, "Rayleigh quotient argument");
    const Vector<T> ax = a.apply(x);
    return real_part(inner(x, ax)) / (nx * nx);
}

template <Field T>
Vector<T> residual(const HermitianOperator<T>& a, const Vector<T>& x) {
    const double nx = require_nonzero(x, "residual argument");
    Vector<T> r = a.apply(x);
    const double rho = real_part(inner(x, r)) / (nx * nx);
    r.axpy(T(-rho), x);
    return r;
}

double AngleParts::radians() const { return std::atan2(sin, cos); }

template <Field T>
AngleParts angle_parts(const Vector<T>& x, const Vector<T>& y) {
    const double nx = require_nonzero(x, "angle argument x");
    const double ny = require_nonzero(y, "angle argument y");
    const T c = inner(x, y);
    Vector<T> w = y;
    w.axpy(-c / (nx * nx), x);
    w.axpy(-inner(x, w) / (nx * nx), x);
    AngleParts p;
    p.cos = std::clamp(std::abs(c) / (nx * ny), 0.0, 1.0);
    p.sin = std::clamp(norm(w) / ny, 0.0, 1.0);
    return p;
}

template <Field T>
double acute_angle(const Vector<T>& x, const Vector<T>& y) {
    return angle_parts(x, y).radians();
}

template <Field T>
bool OrthonormalBasis<T>::add(const Vector<T>& v, double drop_tol) {
    if (ambient_ == 0) ambient_ = v.size();
    if (v.size() != ambient_) throw DimensionMismatch("basis vector length does not match ambient dimension");
    const double nv = norm(v);
    if (!(nv > 0.0)) return false;
    Vector<T> w = v;
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : q_) w.axpy(-inner(q, w), q);
    }
    const double nw = norm(w);
    if (nw <= drop_tol * nv) return false;
    w /= nw;
    q_.push_back(std::move(w));
    return true;
}

template <Field T>
void OrthonormalBasis<T>::add_orthonormal(Vector<T> q) {
    if (ambient_ == 0) ambient_ = q.size();
    if (q.size() != ambient_) throw DimensionMismatch("basis vector length does not match ambient dimension");
    q_.push_back(std::move(q));
}

template <Field T>
std::vector<T> OrthonormalBasis<T>::coefficients(const Vector<T>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("projected vector length does not match basis");
    std::vector<T> c;
    c.reserve(q_.size());
    for (const auto& q : q_) c.push_back(inner(q, v));
    return c;
}

template <Field T>
Vector<T> OrthonormalBasis<T>::project(const Vector<T>& v) const {
    const auto c = coefficients(v);
    Vector<T> out(ambient_);
    for (std::size_t i = 0; i < q_.size(); ++i) out.axpy(c[i], q_[i]);
    return out;
}

template <Field T>
double OrthonormalBasis<T>::projected_norm(const Vector<T>& v) const {
    double acc = 0.0;
    for (const T& c : coefficients(v)) acc += abs2(c);
    return std::sqrt(acc);
}

template <Field T>
OrthonormalBasis<T> orthonormalize(std::span<const Vector<T>> vectors, double drop_tol) {
    if (vectors.empty()) return {};
    OrthonormalBasis<T> basis(vectors.front().size());
    for (const auto& v : vectors) basis.add(v, drop_tol);
    return basis;
}

template <Field T>
Vector<T> project_onto_span(std::span<const Vector<T>> basis, const Vector<T>& v) {
    for (const auto& b : basis) {
        if (b.size() != v.size()) throw DimensionMismatch("basis and vector lengths differ");
    }
    if (basis.empty()) return Vector<T>(v.size());
    OrthonormalBasis<T> q(v.size());
    for (const auto& b : basis) q.add(b);
    return q.project(v);
}

template <Field T>
std::array<T, 2> TwoDimRestriction<T>::coords(const Vector<T>& v) const {
    return {inner(q1, v), inner(q2, v)};
}

template <Field T>
Vector<T> TwoDimRestriction<T>::lift(const std::array<T, 2>& c) const {
    Vector<T> out = c[0] * q1;
    out.axpy(c[1], q2);
    return out;
}

template <Field T>
Vector<T> TwoDimRestriction<T>::project(const Vector<T>& v) const {
    return lift(coords(v));
}

template <Field T>
double TwoDimRestriction<T>::projected_norm(const Vector<T>& v) const {
    const auto c = coords(v);
    return std::sqrt(abs2(c[0]) + abs2(c[1]));
}

template <Field T>
double TwoDimRestriction<T>::distance_from(const Vector<T>& v) const {
    return norm(v - project(v));
}

template <Field T>
std::array<T, 2> TwoDimRestriction<T>::apply_2d(const std::array<T, 2>& c) const {
    return {h[0][0] * c[0] + h[0][1] * c[1], h[1][0] * c[0] + h[1][1] * c[1]};
}

template <Field T>
double TwoDimRestriction<T>::rayleigh_2d(const std::array<T, 2>& c) const {
    const auto hc = apply_2d(c);
    const double cc = abs2(c[0]) + abs2(c[1]);
    if (!(cc > 0.0)) throw ZeroVector("Rayleigh quotient of a zero coordinate vector");
    return real_part(conjugate(c[0]) * hc[0] + conjugate(c[1]) * hc[1]) / cc;
}

template <Field T>
std::array<T, 2> TwoDimRestriction<T>::residual_2d(const std::array<T, 2>& c) const {
    const double rho = rayleigh_2d(c);
    auto hc = apply_2d(c);
    hc[0] -= rho * c[0];
    hc[1] -= rho * c[1];
    return hc;
}

template <Field T>
TwoDimRestriction<T> restrict_2d(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y) {
    if (x.size() != a.dim() || y.size() != a.dim()) {
        throw DimensionMismatch("restriction vectors do not match operator dimension");
    }
    const double nx = require_nonzero(x, "restriction vector x");
    const double ny = require_nonzero(y, "restriction vector y");

    TwoDimRestriction<T> s;
    s.q1 = x;
    s.q1 /= nx;
    Vector<T> w = y;
    w.axpy(-inner(s.q1, w), s.q1);
    w.axpy(-inner(s.q1, w), s.q1);
    const double nw = norm(w);
    if (nw < kGramSchmidtDropTol * ny) {
        throw DegenerateSubspace("x and y are collinear; span{x, y} is one-dimensional");
    }
    s.q2 = w;
    s.q2 /= nw;

    const Vector<T> aq1 = a.apply(s.q1);
    const Vector<T> aq2 = a.apply(s.q2);
    const double h11 = real_part(inner(s.q1, aq1));
    const double h22 = real_part(inner(s.q2, aq2));
    const T h12 = 0.5 * (inner(s.q1, aq2) + conjugate(inner(s.q2, aq1)));
    s.h = {{{T(h11), h12}, {conjugate(h12), T(h22)}}};

    const double mean = 0.5 * (h11 + h22);
    const double half_diff = 0.5 * (h11 - h22);
    const double radius = std::hypot(half_diff, std::abs(h12));
    s.mu = mean + radius;
    s.nu = mean - radius;

    std::array<T, 2> v;
    if (radius == 0.0) {
        v = {T(1.0), T(0.0)};
    } else if (half_diff >= 0.0) {
        v = {T(radius + half_diff), conjugate(h12)};
    } else {
        v = {h12, T(radius - half_diff)};
    }
    const double nv = std::sqrt(abs2(v[0]) + abs2(v[1]));
    v[0] /= nv;
    v[1] /= nv;
    s.u1_coords = v;
    s.u2_coords = {-conjugate(v[1]), conjugate(v[0])};
    s.u1 = s.lift(s.u1_coords);
    s.u2 = s.lift(s.u2_coords);
    return s;
}

#define RQCERT_INSTANTIATE_CORE(T)                                                                  \
    template T inner<T>(const Vector<T>&, const Vector<T>&);                                        \
    template double norm<T>(const Vector<T>&);                                                      \
    template double rayleigh_quotient<T>(const HermitianOperator<T>&, const Vector<T>&);            \
    template Vector<T> residual<T>(const HermitianOperator<T>&, const Vector<T>&);                  \
    template AngleParts angle_parts<T>(const Vector<T>&, const Vector<T>&);                         \
    template double acute_angle<T>(const Vector<T>&, const Vector<T>&);                             \
    template class OrthonormalBasis<T>;                                                             \
    template OrthonormalBasis<T> orthonormalize<T>(std::span<const Vector<T>>, double);             \
    template Vector<T> project_onto_span<T>(std::span<const Vector<T>>, const Vector<T>&);          \
    template struct TwoDimRestriction<T>;                                                           \
    template TwoDimRestriction<T> restrict_2d<T>(const HermitianOperator<T>&, const Vector<T>&,     \
                                                 const Vector<T>&);

RQCERT_INSTANTIATE_CORE(double)
RQCERT_INSTANTIATE_CORE(Complex)

#undef RQCERT_INSTANTIATE_CORE

}  // namespace rqcert
