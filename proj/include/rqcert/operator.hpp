#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "rqcert/vector.hpp"

namespace rqcert {

/// Relative Frobenius-norm tolerance on ||M - M*|| accepted by HermitianOperator::dense.
inline constexpr double kHermitianTol = 1e-12;

/// Self-adjoint operator, stored either densely or as a real diagonal.
///
/// Dense input is checked against kHermitianTol and then replaced by its exact
/// Hermitian part (M + M*)/2, so applying the operator never reintroduces the
/// rejected skew component.
template <Field T>
class HermitianOperator {
public:
    static HermitianOperator dense(const DenseMatrix<T>& m, double hermitian_tol = kHermitianTol);
    static HermitianOperator diagonal(std::vector<double> entries);

    std::size_t dim() const noexcept { return dim_; }
    bool is_diagonal() const noexcept { return std::holds_alternative<std::vector<double>>(rep_); }

    Vector<T> apply(const Vector<T>& x) const;

    /// Frobenius norm.
    double norm() const noexcept { return frobenius_; }

    HermitianOperator negated() const;
    DenseMatrix<T> to_dense() const;

    const DenseMatrix<T>* dense_matrix() const noexcept { return std::get_if<DenseMatrix<T>>(&rep_); }
    const std::vector<double>* diagonal_entries() const noexcept {
        return std::get_if<std::vector<double>>(&rep_);
    }

private:
    HermitianOperator(std::variant<DenseMatrix<T>, std::vector<double>> rep, std::size_t dim, double frob)
        : rep_(std::move(rep)), dim_(dim), frobenius_(frob) {}

    std::variant<DenseMatrix<T>, std::vector<double>> rep_;
    std::size_t dim_;
    double frobenius_;
};

extern template class HermitianOperator<double>;
extern template class HermitianOperator<Complex>;

}  // namespace rqcert
