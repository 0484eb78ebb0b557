#include "rqcert/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rqcert/errors.hpp"

namespace rqcert {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_real(const std::string& tok, std::size_t line_no) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(line_no, "malformed number '" + tok + "'");
    if (!std::isfinite(v)) fail(line_no, "non-finite entry '" + tok + "'");
    return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line_no, "malformed integer '" + tok + "'");
    return v;
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next line that is neither blank nor a % comment.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (blank(line) || line.front() == '%') continue;
            return true;
        }
        return false;
    }
    bool raw(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

MarketHeader parse_banner(const std::string& line, std::size_t line_no) {
    const auto tok = split(line);
    if (tok.size() != 5 || lower(tok[0]) != "%%matrixmarket") fail(line_no, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
    if (lower(tok[1]) != "matrix") fail(line_no, "unsupported object '" + tok[1] + "'");
    MarketHeader h{lower(tok[2]), lower(tok[3]), lower(tok[4])};
    if (h.format != "array" && h.format != "coordinate") fail(line_no, "unsupported format '" + tok[2] + "'");
    if (h.field != "real" && h.field != "complex" && h.field != "integer" && h.field != "double") {
        fail(line_no, "unsupported field '" + tok[3] + "'");
    }
    if (h.field == "double") h.field = "real";
    if (h.symmetry != "general" && h.symmetry != "symmetric" && h.symmetry != "hermitian" &&
        h.symmetry != "skew-symmetric") {
        fail(line_no, "unsupported symmetry '" + tok[4] + "'");
    }
    if (h.symmetry == "hermitian" && h.field != "complex") fail(line_no, "hermitian symmetry needs complex field");
    return h;
}

Complex parse_value(const std::vector<std::string>& tok, std::size_t offset, bool complex, std::size_t line_no) {
    const std::size_t want = offset + (complex ? 2 : 1);
    if (tok.size() != want) fail(line_no, "expected " + std::to_string(want) + " fields, got " + std::to_string(tok.size()));
    const double re = parse_real(tok[offset], line_no);
    const double im = complex ? parse_real(tok[offset + 1], line_no) : 0.0;
    return {re, im};
}

void place(MarketMatrix& m, std::size_t i, std::size_t j, Complex v) {
    m.values[i * m.cols + j] = v;
    if (i == j) return;
    const auto& s = m.header.symmetry;
    if (s == "symmetric") m.values[j * m.cols + i] = v;
    if (s == "hermitian") m.values[j * m.cols + i] = std::conj(v);
    if (s == "skew-symmetric") m.values[j * m.cols + i] = -v;
}

MarketMatrix read_body(LineReader& lr, const MarketHeader& h) {
    MarketMatrix m;
    m.header = h;
    std::string line;
    if (!lr.next(line)) fail(lr.line_no(), "missing size line");
    const auto size = split(line);
    const bool coord = h.format == "coordinate";
    if (size.size() != (coord ? 3u : 2u)) fail(lr.line_no(), "malformed size line");
    m.rows = parse_index(size[0], lr.line_no());
    m.cols = parse_index(size[1], lr.line_no());
    if (m.rows == 0 || m.cols == 0) fail(lr.line_no(), "empty matrix");
    if (h.symmetry != "general" && m.rows != m.cols) fail(lr.line_no(), "symmetric storage needs a square matrix");
    m.values.assign(m.rows * m.cols, Complex{});
    const bool complex = h.field == "complex";

    if (coord) {
        const std::size_t nnz = parse_index(size[2], lr.line_no());
        for (std::size_t k = 0; k < nnz; ++k) {
            if (!lr.next(line)) fail(lr.line_no(), "expected " + std::to_string(nnz) + " entries, got " + std::to_string(k));
            const auto tok = split(line);
            if (tok.size() < 2) fail(lr.line_no(), "malformed entry");
            const std::size_t i = parse_index(tok[0], lr.line_no());
            const std::size_t j = parse_index(tok[1], lr.line_no());
            if (i < 1 || i > m.rows || j < 1 || j > m.cols) fail(lr.line_no(), "index out of range");
            if (h.symmetry != "general" && j > i) fail(lr.line_no(), "symmetric storage must use the lower triangle");
            if (h.symmetry == "skew-symmetric" && i == j) fail(lr.line_no(), "skew-symmetric storage has no diagonal");
            place(m, i - 1, j - 1, parse_value(tok, 2, complex, lr.line_no()));
        }
    } else {
        // Column-major; symmetric storage lists the lower triangle only.
        for (std::size_t j = 0; j < m.cols; ++j) {
            std::size_t first = 0;
            if (h.symmetry == "skew-symmetric") first = j + 1;
            else if (h.symmetry != "general") first = j;
            for (std::size_t i = first; i < m.rows; ++i) {
                if (!lr.next(line)) fail(lr.line_no(), "too few entries");
                place(m, i, j, parse_value(split(line), 0, complex, lr.line_no()));
            }
        }
    }
    if (lr.next(line)) fail(lr.line_no(), "unexpected data after the last entry");
    return m;
}

}  // namespace

MarketMatrix read_matrix_market(std::istream& in) {
    LineReader lr(in);
    std::string line;
    if (!lr.raw(line)) throw ParseError("empty input");
    return read_body(lr, parse_banner(line, lr.line_no()));
}

MarketMatrix read_matrix_market_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return read_matrix_market(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

MarketMatrix read_vector(std::istream& in) {
    LineReader lr(in);
    std::string first;
    while (lr.raw(first) && blank(first)) {
    }
    if (first.empty() || blank(first)) throw ParseError("empty vector input");
    if (lower(first).rfind("%%matrixmarket", 0) == 0) {
        auto m = read_body(lr, parse_banner(first, lr.line_no()));
        if (m.cols != 1) fail(lr.line_no(), "vector file must have a single column");
        return m;
    }

    MarketMatrix m;
    m.header.format = "array";
    std::vector<Complex> vals;
    bool complex = false;
    std::string line = first;
    bool have = true;
    do {
        if (!blank(line) && line.front() != '%') {
            const auto tok = split(line);
            if (tok.size() == 2) complex = true;
            if (tok.size() != 1 && tok.size() != 2) fail(lr.line_no(), "expected one entry per line");
            vals.push_back(parse_value(tok, 0, tok.size() == 2, lr.line_no()));
        }
        have = lr.raw(line);
    } while (have);
    m.header.field = complex ? "complex" : "real";
    m.rows = vals.size();
    m.cols = 1;
    m.values = std::move(vals);
    return m;
}

MarketMatrix read_vector_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return read_vector(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

template <Field T>
DenseMatrix<T> to_dense(const MarketMatrix& m) {
    DenseMatrix<T> out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Complex v = m.at(i, j);
            if constexpr (is_complex_v<T>) {
                out(i, j) = v;
            } else {
                if (v.imag() != 0.0) throw ParseError("complex entry in a real matrix");
                out(i, j) = v.real();
            }
        }
    }
    return out;
}

template <Field T>
Vector<T> to_vector(const MarketMatrix& m) {
    if (m.cols != 1) throw ParseError("expected a single column");
    const auto d = to_dense<T>(m);
    Vector<T> v(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) v[i] = d(i, 0);
    return v;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

template <Field T>
void write_entry(std::ostream& out, T v) {
    if constexpr (is_complex_v<T>) {
        out << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
    } else {
        out << format_double(v) << '\n';
    }
}

}  // namespace

template <Field T>
void write_matrix_market(std::ostream& out, const DenseMatrix<T>& m) {
    out << "%%MatrixMarket matrix array " << field_name<T>() << " general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) write_entry(out, m(i, j));
}

template <Field T>
void write_vector(std::ostream& out, const Vector<T>& v) {
    out << "%%MatrixMarket matrix array " << field_name<T>() << " general\n";
    out << v.size() << " 1\n";
    for (const T& e : v) write_entry(out, e);
}

template DenseMatrix<double> to_dense<double>(const MarketMatrix&);
template DenseMatrix<Complex> to_dense<Complex>(const MarketMatrix&);
template Vector<double> to_vector<double>(const MarketMatrix&);
template Vector<Complex> to_vector<Complex>(const MarketMatrix&);
template void write_matrix_market<double>(std::ostream&, const DenseMatrix<double>&);
template void write_matrix_market<Complex>(std::ostream&, const DenseMatrix<Complex>&);
template void write_vector<double>(std::ostream&, const Vector<double>&);
template void write_vector<Complex>(std::ostream&, const Vector<Complex>&);

}  // namespace rqcert
