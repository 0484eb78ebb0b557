#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "rqcert/operator.hpp"
#include "rqcert/vector.hpp"

namespace rqcert {

/// x and y are treated as collinear when sin∠{x,y} falls below this.
inline constexpr double kAngleTol = 1e-12;
/// Gram–Schmidt drops a vector whose remainder is below this fraction of its norm.
inline constexpr double kGramSchmidtDropTol = 1e-8;

/// <x, y>, conjugate-linear in x.
template <Field T>
T inner(const Vector<T>& x, const Vector<T>& y);

template <Field T>
double norm(const Vector<T>& x);

/// <x, Ax> / <x, x>. The imaginary part (roundoff for Hermitian A) is discarded.
template <Field T>
double rayleigh_quotient(const HermitianOperator<T>& a, const Vector<T>& x);

/// Ax - rho(x) x.
template <Field T>
Vector<T> residual(const HermitianOperator<T>& a, const Vector<T>& x);

/// Cosine and sine of the acute angle between two nonzero vectors.
///
/// The sine comes from the component of y orthogonal to x (one
/// reorthogonalization pass), so both parts keep full relative accuracy at the
/// ends of [0, pi/2].
struct AngleParts {
    double cos = 1.0;
    double sin = 0.0;
    double radians() const;
};

template <Field T>
AngleParts angle_parts(const Vector<T>& x, const Vector<T>& y);

/// arccos(|<x,y>| / (||x|| ||y||)) in [0, pi/2].
template <Field T>
double acute_angle(const Vector<T>& x, const Vector<T>& y);

/// Orthonormal basis of a span, built by modified Gram–Schmidt with one
/// reorthogonalization pass. Dependent inputs are dropped.
template <Field T>
class OrthonormalBasis {
public:
    OrthonormalBasis() = default;
    explicit OrthonormalBasis(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    /// Orthogonalizes v against the basis and appends it; returns false (and
    /// leaves the basis unchanged) when v is dependent within drop_tol.
    bool add(const Vector<T>& v, double drop_tol = kGramSchmidtDropTol);

    /// Appends a vector already known to be unit-norm and orthogonal to the basis.
    void add_orthonormal(Vector<T> q);

    std::size_t dim() const noexcept { return q_.size(); }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    const std::vector<Vector<T>>& vectors() const noexcept { return q_; }
    const Vector<T>& operator[](std::size_t i) const { return q_[i]; }

    /// Coefficients <q_i, v>.
    std::vector<T> coefficients(const Vector<T>& v) const;
    Vector<T> project(const Vector<T>& v) const;
    /// ||P v|| from the coefficients, without forming P v.
    double projected_norm(const Vector<T>& v) const;

private:
    std::size_t ambient_ = 0;
    std::vector<Vector<T>> q_;
};

template <Field T>
OrthonormalBasis<T> orthonormalize(std::span<const Vector<T>> vectors, double drop_tol = kGramSchmidtDropTol);

/// Orthogonal projection of v onto span(basis).
template <Field T>
Vector<T> project_onto_span(std::span<const Vector<T>> basis, const Vector<T>& v);

/// The restriction A_S of A to S = span{x, y}, dim S = 2.
///
/// h holds <q_i, A q_j> in the orthonormal basis (q1, q2); mu >= nu are its
/// eigenvalues, and u1, u2 the matching unit eigenvectors lifted to the ambient
/// space.
template <Field T>
struct TwoDimRestriction {
    Vector<T> q1;
    Vector<T> q2;
    std::array<std::array<T, 2>, 2> h{};
    double mu = 0.0;
    double nu = 0.0;
    Vector<T> u1;
    Vector<T> u2;
    /// Coordinates of u1, u2 in the (q1, q2) basis.
    std::array<T, 2> u1_coords{};
    std::array<T, 2> u2_coords{};

    double gap() const noexcept { return mu - nu; }

    /// Coordinates (<q1,v>, <q2,v>) of v.
    std::array<T, 2> coords(const Vector<T>& v) const;
    Vector<T> lift(const std::array<T, 2>& c) const;
    /// ||v - P_S v||, distance of v from S.
    double distance_from(const Vector<T>& v) const;
    /// P_S v.
    Vector<T> project(const Vector<T>& v) const;
    double projected_norm(const Vector<T>& v) const;

    /// rho(c, h), evaluated purely on the 2x2 matrix.
    double rayleigh_2d(const std::array<T, 2>& c) const;
    /// r(c, h) = h c - rho(c, h) c, in coordinates.
    std::array<T, 2> residual_2d(const std::array<T, 2>& c) const;
    /// h c.
    std::array<T, 2> apply_2d(const std::array<T, 2>& c) const;
};

template <Field T>
TwoDimRestriction<T> restrict_2d(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y);

}  // namespace rqcert
