#include "rqcert/operator.hpp"

#include <cmath>
#include <string>

namespace rqcert {

template <Field T>
HermitianOperator<T> HermitianOperator<T>::dense(const DenseMatrix<T>& m, double hermitian_tol) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) {
        throw DimensionMismatch("Hermitian operator needs a nonempty square matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    double norm2 = 0.0;
    double skew2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_finite(m(i, j))) throw NotHermitian("matrix has a non-finite entry");
            norm2 += abs2(m(i, j));
            skew2 += abs2(m(i, j) - conjugate(m(j, i)));
        }
    }
    if (std::sqrt(skew2) > hermitian_tol * std::sqrt(norm2)) {
        throw NotHermitian("matrix is not Hermitian: ||M - M*||_F = " + std::to_string(std::sqrt(skew2)) +
                           " exceeds tolerance relative to ||M||_F = " + std::to_string(std::sqrt(norm2)));
    }

    DenseMatrix<T> h(n, n);
    double frob2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = T(real_part(m(i, i)));
        for (std::size_t j = i + 1; j < n; ++j) {
            h(i, j) = 0.5 * (m(i, j) + conjugate(m(j, i)));
            h(j, i) = conjugate(h(i, j));
        }
    }
    for (const T& v : h.data()) frob2 += abs2(v);
    return HermitianOperator(std::move(h), n, std::sqrt(frob2));
}

template <Field T>
HermitianOperator<T> HermitianOperator<T>::diagonal(std::vector<double> entries) {
    if (entries.empty()) throw DimensionMismatch("diagonal operator needs at least one entry");
    double frob2 = 0.0;
    for (double d : entries) {
        if (!std::isfinite(d)) throw NotHermitian("diagonal has a non-finite entry");
        frob2 += d * d;
    }
    const std::size_t n = entries.size();
    return HermitianOperator(std::move(entries), n, std::sqrt(frob2));
}

template <Field T>
Vector<T> HermitianOperator<T>::apply(const Vector<T>& x) const {
    if (x.size() != dim_) {
        throw DimensionMismatch("operator of dimension " + std::to_string(dim_) +
                                " applied to vector of length " + std::to_string(x.size()));
    }
    Vector<T> out(dim_);
    if (const auto* d = diagonal_entries()) {
        for (std::size_t i = 0; i < dim_; ++i) out[i] = (*d)[i] * x[i];
    } else {
        const auto& m = *dense_matrix();
        for (std::size_t i = 0; i < dim_; ++i) {
            T acc{};
            const auto row = m.row(i);
            for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * x[j];
            out[i] = acc;
        }
    }
    return out;
}

template <Field T>
HermitianOperator<T> HermitianOperator<T>::negated() const {
    if (const auto* d = diagonal_entries()) {
        std::vector<double> neg(*d);
        for (double& v : neg) v = -v;
        return HermitianOperator(std::move(neg), dim_, frobenius_);
    }
    DenseMatrix<T> m = *dense_matrix();
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = -m(i, j);
    return HermitianOperator(std::move(m), dim_, frobenius_);
}

template <Field T>
DenseMatrix<T> HermitianOperator<T>::to_dense() const {
    if (const auto* m = dense_matrix()) return *m;
    DenseMatrix<T> out(dim_, dim_);
    const auto& d = *diagonal_entries();
    for (std::size_t i = 0; i < dim_; ++i) out(i, i) = T(d[i]);
    return out;
}

template class HermitianOperator<double>;
template class HermitianOperator<Complex>;

}  // namespace rqcert
