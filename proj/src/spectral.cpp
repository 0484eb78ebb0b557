#include "rqcert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rqcert/errors.hpp"

namespace rqcert {

template <Field T>
double SpectralDecomposition<T>::spectral_radius() const {
    return eigenvalues.empty() ? 0.0 : std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
}

template <Field T>
SpectralDecomposition<T> SpectralDecomposition<T>::negated() const {
    SpectralDecomposition out;
    out.sweeps = sweeps;
    out.off_norm = off_norm;
    out.eigenvalue_error = eigenvalue_error;
    out.eigenvalues.assign(eigenvalues.rbegin(), eigenvalues.rend());
    for (double& v : out.eigenvalues) v = -v;
    out.eigenvectors.assign(eigenvectors.rbegin(), eigenvectors.rend());
    return out;
}

namespace {

template <Field T>
double off_diagonal_norm(const DenseMatrix<T>& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) acc += abs2(m(i, j));
    return std::sqrt(acc);
}

template <Field T>
SpectralDecomposition<T> sorted(std::vector<double> values, std::vector<Vector<T>> vectors) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return values[i] < values[j]; });
    SpectralDecomposition<T> dec;
    for (auto i : order) {
        dec.eigenvalues.push_back(values[i]);
        dec.eigenvectors.push_back(std::move(vectors[i]));
    }
    return dec;
}

// One two-sided rotation zeroing a(p,q). With d = conj(a_pq)/|a_pq| the unitary
// G = [[c, s], [-d s, d c]] (rows/cols p, q) first turns a_pq real and positive,
// then applies the real Jacobi rotation.
template <Field T>
void rotate(DenseMatrix<T>& a, DenseMatrix<T>& v, std::size_t p, std::size_t q) {
    const T apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) return;
    const T d = conjugate(apq) / g;
    const double app = real_part(a(p, p));
    const double aqq = real_part(a(q, q));
    const double theta = (aqq - app) / (2.0 * g);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();

    const T gqp = -d * s;
    const T gqq = d * c;
    auto columns = [&](DenseMatrix<T>& m) {
        for (std::size_t k = 0; k < n; ++k) {
            const T mkp = m(k, p);
            const T mkq = m(k, q);
            m(k, p) = mkp * c + mkq * gqp;
            m(k, q) = mkp * s + mkq * gqq;
        }
    };
    columns(a);
    columns(v);
    const T cgqp = conjugate(gqp);
    const T cgqq = conjugate(gqq);
    for (std::size_t k = 0; k < n; ++k) {
        const T apk = a(p, k);
        const T aqk = a(q, k);
        a(p, k) = c * apk + cgqp * aqk;
        a(q, k) = s * apk + cgqq * aqk;
    }
    a(p, p) = T(app - t * g);
    a(q, q) = T(aqq + t * g);
    a(p, q) = T{};
    a(q, p) = T{};
}

}  // namespace

template <Field T>
SpectralDecomposition<T> eigendecompose(const HermitianOperator<T>& op) {
    const std::size_t n = op.dim();
    if (const auto* diag = op.diagonal_entries()) {
        std::vector<Vector<T>> vecs;
        vecs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) vecs.push_back(Vector<T>::unit(n, i));
        return sorted<T>(*diag, std::move(vecs));
    }

    DenseMatrix<T> a = *op.dense_matrix();
    DenseMatrix<T> v = DenseMatrix<T>::identity(n);
    const double target = kJacobiTol * op.norm();
    int sweep = 0;
    double off = off_diagonal_norm(a);
    while (off > target) {
        if (sweep == kJacobiMaxSweeps) {
            throw ConvergenceFailure("Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) +
                                         " sweeps; off-diagonal norm " + std::to_string(off),
                                     off);
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        ++sweep;
        off = off_diagonal_norm(a);
    }

    std::vector<double> values(n);
    std::vector<Vector<T>> vecs(n, Vector<T>(n));
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = real_part(a(j, j));
        for (std::size_t i = 0; i < n; ++i) vecs[j][i] = v(i, j);
    }
    auto dec = sorted<T>(std::move(values), std::move(vecs));
    dec.sweeps = sweep;
    dec.off_norm = off;
    dec.eigenvalue_error = off + 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * op.norm();
    return dec;
}

double coincide_tolerance(double rho, double eigenvalue_error) {
    return 1e-10 * std::max(1.0, std::abs(rho)) + 10.0 * eigenvalue_error;
}

double cluster_tolerance(double lambda, double eigenvalue_error) {
    return 1e-8 * std::max(1.0, std::abs(lambda)) + 10.0 * eigenvalue_error;
}

SpectrumContext spectrum_context(std::span<const double> ev, double rho, std::optional<double> lambda_choice,
                                 double eigenvalue_error) {
    if (!std::isfinite(rho)) throw HypothesisViolation("Rayleigh quotient is not finite");
    if (ev.empty()) throw DimensionMismatch("empty spectrum");

    SpectrumContext ctx;
    ctx.rho = rho;
    ctx.coincide_tol = coincide_tolerance(rho, eigenvalue_error);

    double nearest = ev.front();
    for (double e : ev) {
        if (e < rho - ctx.coincide_tol) ctx.alpha = e;
        if (e > rho + ctx.coincide_tol && !ctx.beta) ctx.beta = e;
        if (std::abs(e - rho) <= ctx.coincide_tol) ctx.coincides = true;
        // Strict comparison keeps the smaller eigenvalue on ties (ev ascending).
        if (std::abs(e - rho) < std::abs(nearest - rho)) nearest = e;
    }
    ctx.lambda_nearest = nearest;

    if (ctx.coincides && !lambda_choice) {
        throw SpectrumCoincidence("Rayleigh quotient " + std::to_string(rho) +
                                  " coincides with a point of the spectrum");
    }

    if (lambda_choice) {
        const double want = *lambda_choice;
        auto it = std::min_element(ev.begin(), ev.end(),
                                   [&](double a, double b) { return std::abs(a - want) < std::abs(b - want); });
        if (std::abs(*it - want) > std::max(cluster_tolerance(want, eigenvalue_error), ctx.coincide_tol)) {
            throw HypothesisViolation("designated lambda " + std::to_string(want) + " is not an eigenvalue");
        }
        ctx.lambda = *it;
    } else {
        ctx.lambda = nearest;
    }

    ctx.cluster_tol = cluster_tolerance(ctx.lambda, eigenvalue_error);
    auto count_near = [&](double c) {
        const double tol = cluster_tolerance(c, eigenvalue_error);
        return static_cast<std::size_t>(
            std::count_if(ev.begin(), ev.end(), [&](double e) { return std::abs(e - c) <= tol; }));
    };
    if (ctx.alpha) ctx.alpha_multiplicity = count_near(*ctx.alpha);
    if (ctx.beta) ctx.beta_multiplicity = count_near(*ctx.beta);
    ctx.lambda_multiplicity = count_near(ctx.lambda);

    ctx.delta = std::numeric_limits<double>::infinity();
    for (double e : ev) {
        if (std::abs(e - ctx.lambda) <= ctx.cluster_tol) continue;
        ctx.delta = std::min(ctx.delta, std::abs(e - rho));
    }
    return ctx;
}

namespace {

void require_off_spectrum(std::span<const double> ev, double rho, double eigenvalue_error) {
    const double tol = coincide_tolerance(rho, eigenvalue_error);
    for (double e : ev) {
        if (std::abs(e - rho) <= tol) {
            throw SpectrumCoincidence("split point " + std::to_string(rho) + " coincides with an eigenvalue");
        }
    }
}

}  // namespace

template <Field T>
std::vector<Vector<T>> invariant_subspace_above(const SpectralDecomposition<T>& dec, double rho) {
    require_off_spectrum(dec.eigenvalues, rho, dec.eigenvalue_error);
    std::vector<Vector<T>> out;
    for (std::size_t i = 0; i < dec.dim(); ++i)
        if (dec.eigenvalues[i] > rho) out.push_back(dec.eigenvectors[i]);
    return out;
}

template <Field T>
std::vector<Vector<T>> invariant_subspace_below(const SpectralDecomposition<T>& dec, double rho) {
    require_off_spectrum(dec.eigenvalues, rho, dec.eigenvalue_error);
    std::vector<Vector<T>> out;
    for (std::size_t i = 0; i < dec.dim(); ++i)
        if (dec.eigenvalues[i] < rho) out.push_back(dec.eigenvectors[i]);
    return out;
}

template <Field T>
std::vector<Vector<T>> eigenspace(const SpectralDecomposition<T>& dec, double lambda) {
    const double tol = cluster_tolerance(lambda, dec.eigenvalue_error);
    std::vector<Vector<T>> out;
    for (std::size_t i = 0; i < dec.dim(); ++i)
        if (std::abs(dec.eigenvalues[i] - lambda) <= tol) out.push_back(dec.eigenvectors[i]);
    return out;
}

#define RQCERT_INSTANTIATE_SPECTRAL(T)                                                               \
    template struct SpectralDecomposition<T>;                                                        \
    template SpectralDecomposition<T> eigendecompose<T>(const HermitianOperator<T>&);                \
    template std::vector<Vector<T>> invariant_subspace_above<T>(const SpectralDecomposition<T>&, double); \
    template std::vector<Vector<T>> invariant_subspace_below<T>(const SpectralDecomposition<T>&, double); \
    template std::vector<Vector<T>> eigenspace<T>(const SpectralDecomposition<T>&, double);

RQCERT_INSTANTIATE_SPECTRAL(double)
RQCERT_INSTANTIATE_SPECTRAL(Complex)

#undef RQCERT_INSTANTIATE_SPECTRAL

}  // namespace rqcert
