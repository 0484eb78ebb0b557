#pragma once

#include <random>
#include <vector>

#include "rqcert/core.hpp"
#include "rqcert/experiments.hpp"
#include "oracles.hpp"

namespace testing_util {

using rqcert::Complex;
using rqcert::DenseMatrix;
using rqcert::HermitianOperator;
using rqcert::Vector;

inline Vector<double> vec(std::initializer_list<double> v) { return Vector<double>(std::vector<double>(v)); }

inline HermitianOperator<double> diag(std::initializer_list<double> d) { return HermitianOperator<double>::diagonal(d); }

template <rqcert::Field T>
oracle::Mat to_oracle(const HermitianOperator<T>& a) {
    const auto m = a.to_dense();
    oracle::Mat out(m.rows(), std::vector<oracle::cplx>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = oracle::cplx(m(i, j));
    return out;
}

template <rqcert::Field T>
std::vector<oracle::cplx> to_oracle(const Vector<T>& v) {
    std::vector<oracle::cplx> out;
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

}  // namespace testing_util

namespace testing_util {

template <rqcert::Field T = double>
HermitianOperator<T> dense(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t n = rows.size();
    DenseMatrix<T> m(n, n);
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const auto& v : r) m(i, j++) = v;
        ++i;
    }
    return HermitianOperator<T>::dense(m);
}

}  // namespace testing_util
