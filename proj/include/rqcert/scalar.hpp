#pragma once

#include <cmath>
#include <complex>
#include <concepts>

namespace rqcert {

using Complex = std::complex<double>;

/// The two scalar fields the library is instantiated for.
template <class T>
concept Field = std::same_as<T, double> || std::same_as<T, Complex>;

template <Field T>
inline constexpr bool is_complex_v = std::same_as<T, Complex>;

template <Field T>
constexpr T conjugate(T v) {
    if constexpr (is_complex_v<T>) {
        return std::conj(v);
    } else {
        return v;
    }
}

template <Field T>
constexpr double real_part(T v) {
    if constexpr (is_complex_v<T>) {
        return v.real();
    } else {
        return v;
    }
}

template <Field T>
constexpr double imag_part(T v) {
    if constexpr (is_complex_v<T>) {
        return v.imag();
    } else {
        return 0.0;
    }
}

/// |v|^2 without the square root.
template <Field T>
constexpr double abs2(T v) {
    if constexpr (is_complex_v<T>) {
        return v.real() * v.real() + v.imag() * v.imag();
    } else {
        return v * v;
    }
}

template <Field T>
bool is_finite(T v) {
    return std::isfinite(real_part(v)) && std::isfinite(imag_part(v));
}

template <Field T>
constexpr const char* field_name() {
    return is_complex_v<T> ? "complex" : "real";
}

}  // namespace rqcert
