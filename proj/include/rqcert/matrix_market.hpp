#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rqcert/vector.hpp"

namespace rqcert {

/// %%MatrixMarket matrix <format> <field> <symmetry>
struct MarketHeader {
    std::string format = "array";      // array | coordinate
    std::string field = "real";        // real | complex | integer
    std::string symmetry = "general";  // general | symmetric | hermitian | skew-symmetric
};

/// A parsed file, expanded to a full row-major matrix. Symmetric storage is
/// mirrored on read.
struct MarketMatrix {
    MarketHeader header;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> values;

    bool is_complex() const noexcept { return header.field == "complex"; }
    const Complex& at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Throws ParseError with the offending line number.
MarketMatrix read_matrix_market(std::istream& in);
MarketMatrix read_matrix_market_file(const std::filesystem::path& path);

/// Matrix Market single-column array, or plain text with one entry per line
/// ("re" or "re im"); detected by the %%MatrixMarket banner.
MarketMatrix read_vector(std::istream& in);
MarketMatrix read_vector_file(const std::filesystem::path& path);

/// Throws ParseError if a real target receives a nonzero imaginary part.
template <Field T>
DenseMatrix<T> to_dense(const MarketMatrix& m);

template <Field T>
Vector<T> to_vector(const MarketMatrix& m);

/// Dense array format, general symmetry, 17 significant digits so a re-read is
/// bit-exact.
template <Field T>
void write_matrix_market(std::ostream& out, const DenseMatrix<T>& m);

template <Field T>
void write_vector(std::ostream& out, const Vector<T>& v);

/// "%.17g", with ".0" appended when the result would read as an integer.
std::string format_double(double v);

}  // namespace rqcert
