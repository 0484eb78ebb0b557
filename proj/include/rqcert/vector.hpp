#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "rqcert/errors.hpp"
#include "rqcert/scalar.hpp"

namespace rqcert {

/// Dense vector over the field T.
template <Field T>
class Vector {
public:
    using value_type = T;

    Vector() = default;
    explicit Vector(std::size_t n, T fill = T{}) : data_(n, fill) {}
    Vector(std::initializer_list<T> values) : data_(values) {}
    explicit Vector(std::vector<T> values) : data_(std::move(values)) {}

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> span() noexcept { return data_; }
    std::span<const T> span() const noexcept { return data_; }
    const std::vector<T>& values() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    Vector& operator+=(const Vector& o) {
        check_same_size(o);
        for (std::size_t i = 0; i < size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        check_same_size(o);
        for (std::size_t i = 0; i < size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Vector& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }
    Vector& operator/=(double s) {
        for (auto& v : data_) v /= s;
        return *this;
    }

    /// this += s * x
    void axpy(T s, const Vector& x) {
        check_same_size(x);
        for (std::size_t i = 0; i < size(); ++i) data_[i] += s * x.data_[i];
    }

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(T s, Vector a) { return a *= s; }
    friend Vector operator-(Vector a) { return a *= T(-1.0); }
    friend bool operator==(const Vector&, const Vector&) = default;

    static Vector unit(std::size_t n, std::size_t i) {
        Vector e(n);
        e[i] = T(1.0);
        return e;
    }

private:
    void check_same_size(const Vector& o) const {
        if (o.size() != size()) throw DimensionMismatch("vector length mismatch");
    }

    std::vector<T> data_;
};

/// Square or rectangular row-major matrix.
template <Field T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> data() const noexcept { return data_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

}  // namespace rqcert
