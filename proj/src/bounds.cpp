#include "rqcert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rqcert/errors.hpp"
#include "rqcert/identities.hpp"

namespace rqcert {

BoundReport::BoundReport(std::string name, double lhs_value, double rhs_value)
    : bound_name(std::move(name)), lhs(lhs_value), rhs(rhs_value) {
    const double tol = tolerance();
    holds = lhs <= rhs + tol;
    equality = std::abs(lhs - rhs) <= tol;
}

double BoundReport::tolerance() const {
    double s = 1.0;
    if (std::isfinite(lhs)) s = std::max(s, std::abs(lhs));
    if (std::isfinite(rhs)) s = std::max(s, std::abs(rhs));
    return kBoundTol * s;
}

std::optional<double> BoundReport::ingredient(std::string_view name) const {
    for (const auto& [k, v] : ingredients)
        if (k == name) return v;
    return std::nullopt;
}

double BoundReport::at(std::string_view name) const {
    if (auto v = ingredient(name)) return *v;
    throw std::out_of_range("bound report " + bound_name + " has no ingredient " + std::string(name));
}

namespace {

constexpr double kRightAngleTol = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <Field T>
void require_eigenvector(const HermitianOperator<T>& a, const Vector<T>& x) {
    if (!is_certified_eigenvector(a, x)) throw NotAnEigenvector("reference vector x is not an eigenvector of A");
}

template <Field T>
double sum_abs2_coefficients(const std::vector<Vector<T>>& basis, const Vector<T>& v) {
    double acc = 0.0;
    for (const auto& q : basis) acc += abs2(inner(q, v));
    return acc;
}

template <Field T>
Vector<T> combine(const std::vector<Vector<T>>& basis, const Vector<T>& v) {
    Vector<T> out(v.size());
    for (const auto& q : basis) out.axpy(inner(q, v), q);
    return out;
}

// Everything the projected-residual bounds share: the split of y along the
// invariant subspace U above rho, S = span{(I - P_U) y, y}, and the residual
// norms under the three projections.
template <Field T>
struct ProjectedResidual {
    double rho = 0.0;
    double y_norm = 0.0;
    double r_norm = 0.0;
    double ps_r_norm = 0.0;
    double pv_upper_r_norm = 0.0;  // V = U + span{y}
    double pv_lower_r_norm = 0.0;  // V = U^perp + span{y}
    SpectrumContext ctx;
    TwoDimRestriction<T> s;
};

template <Field T>
ProjectedResidual<T> projected_residual(const HermitianOperator<T>& a, const Vector<T>& y,
                                        const SpectralDecomposition<T>& dec) {
    ProjectedResidual<T> pr;
    pr.rho = rayleigh_quotient(a, y);
    pr.ctx = spectrum_context(dec, pr.rho);
    if (!pr.ctx.alpha || !pr.ctx.beta) {
        throw HypothesisViolation("Rayleigh quotient is at the edge of the spectrum");
    }
    const auto above = invariant_subspace_above(dec, pr.rho);
    const auto below = invariant_subspace_below(dec, pr.rho);
    const Vector<T> x = combine(below, y);
    const Vector<T> w = combine(above, y);
    const double nx = norm(x);
    const double nw = norm(w);
    pr.y_norm = norm(y);
    if (!(nx > 0.0) || !(nw > 0.0)) {
        throw DegenerateSubspace("y lies in one invariant subspace; span{(I - P_U) y, y} is one-dimensional");
    }
    pr.s = restrict_2d(a, x, y);

    const Vector<T> r = residual(a, y);
    pr.r_norm = norm(r);
    pr.ps_r_norm = pr.s.projected_norm(r);
    const double rx = abs2(inner(x, r)) / (nx * nx);
    const double rw = abs2(inner(w, r)) / (nw * nw);
    pr.pv_upper_r_norm = std::sqrt(sum_abs2_coefficients(above, r) + rx);
    pr.pv_lower_r_norm = std::sqrt(sum_abs2_coefficients(below, r) + rw);
    return pr;
}

// When rho(y) sits on the spectrum because y lies in an eigenspace, every
// certified quantity vanishes; otherwise the coincidence is a genuine error.
template <Field T>
std::optional<BoundReport> eigenspace_degenerate_report(const std::string& name, const HermitianOperator<T>& a,
                                                        const Vector<T>& y, const SpectralDecomposition<T>& dec) {
    const double rho = rayleigh_quotient(a, y);
    const double tol = coincide_tolerance(rho, dec.eigenvalue_error);
    for (double e : dec.eigenvalues) {
        if (std::abs(e - rho) > tol) continue;
        const Vector<T> py = combine(eigenspace(dec, e), y);
        if (norm(py) > 0.0 && angle_parts(py, y).sin < kGramSchmidtDropTol) {
            BoundReport rep(name, 0.0, 0.0);
            rep.add("rho", rho);
            rep.add("eigenspace_lambda", e);
            rep.add("dim_s", 1.0);
            return rep;
        }
        break;
    }
    return std::nullopt;
}

template <Field T>
void add_projection_ingredients(BoundReport& rep, const ProjectedResidual<T>& pr) {
    rep.add("rho", pr.rho);
    rep.add("alpha", *pr.ctx.alpha);
    rep.add("beta", *pr.ctx.beta);
    rep.add("y_norm", pr.y_norm);
    rep.add("r_norm", pr.r_norm);
    rep.add("ps_r_norm", pr.ps_r_norm);
    rep.add("pv_upper_r_norm", pr.pv_upper_r_norm);
    rep.add("pv_lower_r_norm", pr.pv_lower_r_norm);
    rep.add("mu", pr.s.mu);
    rep.add("nu", pr.s.nu);
}

BoundReport kato_temple_report(std::string name, double rho, const SpectrumContext& ctx, double resid2) {
    const double a = ctx.alpha.value_or(-kInf);
    const double b = ctx.beta.value_or(kInf);
    const double lam = ctx.lambda;
    const double tol = std::max(ctx.cluster_tol, ctx.coincide_tol);
    if (lam < a - tol || lam > b + tol) {
        throw HypothesisViolation("lambda is not adjacent to rho: the interval between them contains spectrum");
    }
    const double lower = std::isfinite(a) ? -resid2 / (rho - a) : 0.0;
    const double upper = std::isfinite(b) ? resid2 / (b - rho) : 0.0;
    const double d = rho - lam;
    BoundReport rep(std::move(name), std::abs(d), d >= 0.0 ? upper : -lower);
    const double itol = rep.tolerance();
    rep.holds = lower - itol <= d && d <= upper + itol;
    rep.add("rho", rho);
    rep.add("lambda", lam);
    if (ctx.alpha) rep.add("a", a);
    if (ctx.beta) rep.add("b", b);
    rep.add("rho_minus_lambda", d);
    rep.add("interval_lower", lower);
    rep.add("interval_upper", upper);
    return rep;
}

double nearest_eigenvalue(std::span<const double> ev, double rho) {
    double best = ev.front();
    for (double e : ev)
        if (std::abs(e - rho) < std::abs(best - rho)) best = e;
    return best;
}

template <Field T>
BoundReport improved_core(const HermitianOperator<T>& a, const Vector<T>& y, const SpectralDecomposition<T>& dec,
                          ProjectedResidual<T>& pr) {
    pr = projected_residual(a, y, dec);
    const double lhs = (*pr.ctx.beta - pr.rho) * (pr.rho - *pr.ctx.alpha);
    return BoundReport("improved_posteriori", lhs, pr.ps_r_norm * pr.ps_r_norm / (pr.y_norm * pr.y_norm));
}

}  // namespace

template <Field T>
BoundReport apriori_sin2(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y,
                         const SpectralDecomposition<T>& dec) {
    require_eigenvector(a, x);
    const double lambda = rayleigh_quotient(a, x);
    const double rho = rayleigh_quotient(a, y);
    const auto ap = angle_parts(x, y);
    const double sin2 = ap.sin * ap.sin;
    const double width = dec.max() - dec.min();

    double mu = lambda;
    double nu = lambda;
    if (ap.sin >= kGramSchmidtDropTol) {
        const auto s = restrict_2d(a, x, y);
        mu = s.mu;
        nu = s.nu;
    }
    BoundReport rep("apriori_sin2", std::abs(lambda - rho), width * sin2);
    rep.add("lambda", lambda);
    rep.add("rho", rho);
    rep.add("theta", ap.radians());
    rep.add("sin2_theta", sin2);
    rep.add("spectrum_width", width);
    rep.add("mu", mu);
    rep.add("nu", nu);
    rep.add("restricted_bound", (mu - nu) * sin2);
    rep.add("restricted_identity_error", std::abs(rep.lhs - (mu - nu) * sin2));
    return rep;
}

template <Field T>
BoundReport mixed_tan(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y) {
    require_eigenvector(a, x);
    const auto ap = angle_parts(x, y);
    if (ap.radians() >= std::numbers::pi / 2 - kRightAngleTol) {
        throw HypothesisViolation("mixed bound needs angle(x, y) < pi/2");
    }
    const double lambda = rayleigh_quotient(a, x);
    const double rho = rayleigh_quotient(a, y);
    const double ny = norm(y);
    const Vector<T> r = residual(a, y);
    OrthonormalBasis<T> s(y.size());
    s.add(x);
    s.add(y);
    const Vector<T> ps_r = s.project(r);
    const double tan = ap.sin / ap.cos;
    const double r_norm = norm(r);
    const double ps_r_norm = norm(ps_r);

    BoundReport rep("mixed_tan", std::abs(lambda - rho), r_norm / ny * tan);
    const double invariance_gap = norm(r - ps_r) / ny;
    rep.equality = invariance_gap <= kBoundTol * std::max(1.0, r_norm / ny);
    rep.add("lambda", lambda);
    rep.add("rho", rho);
    rep.add("theta", ap.radians());
    rep.add("tan_theta", tan);
    rep.add("r_norm", r_norm);
    rep.add("ps_r_norm", ps_r_norm);
    rep.add("y_norm", ny);
    rep.add("projected_rhs", ps_r_norm / ny * tan);
    rep.add("invariance_gap", invariance_gap);
    return rep;
}

template <Field T>
BoundReport temple(const HermitianOperator<T>& a, const Vector<T>& y, const SpectrumContext& ctx) {
    const double rho = rayleigh_quotient(a, y);
    if (std::abs(rho - ctx.rho) > ctx.coincide_tol) {
        throw std::invalid_argument("spectrum context was built for a different Rayleigh quotient");
    }
    if (ctx.coincides) throw SpectrumCoincidence("Temple bound undefined: rho(y) is a point of the spectrum");
    if (!ctx.alpha || !ctx.beta) throw HypothesisViolation("Temple bound needs spectrum on both sides of rho(y)");
    const double ny = norm(y);
    const double r_norm = norm(residual(a, y));
    BoundReport rep("temple", (*ctx.beta - rho) * (rho - *ctx.alpha), r_norm * r_norm / (ny * ny));
    rep.add("rho", rho);
    rep.add("alpha", *ctx.alpha);
    rep.add("beta", *ctx.beta);
    rep.add("r_norm", r_norm);
    rep.add("y_norm", ny);
    return rep;
}

template <Field T>
BoundReport kato_temple(const HermitianOperator<T>& a, const Vector<T>& y, const SpectrumContext& ctx) {
    const double rho = rayleigh_quotient(a, y);
    if (std::abs(rho - ctx.rho) > ctx.coincide_tol) {
        throw std::invalid_argument("spectrum context was built for a different Rayleigh quotient");
    }
    const double ny = norm(y);
    const double r_norm = norm(residual(a, y));
    auto rep = kato_temple_report("kato_temple", rho, ctx, r_norm * r_norm / (ny * ny));
    rep.add("r_norm", r_norm);
    rep.add("y_norm", ny);
    return rep;
}

template <Field T>
BoundReport gap_bound(const HermitianOperator<T>& a, const Vector<T>& y, const SpectrumContext& ctx) {
    const double rho = rayleigh_quotient(a, y);
    if (std::abs(rho - ctx.rho) > ctx.coincide_tol) {
        throw std::invalid_argument("spectrum context was built for a different Rayleigh quotient");
    }
    if (!(ctx.delta > ctx.coincide_tol)) {
        throw HypothesisViolation("gap bound needs delta > 0; rho(y) coincides with a second spectrum point");
    }
    const double ny = norm(y);
    const double r_norm = norm(residual(a, y));
    const double rhs = std::isfinite(ctx.delta) ? r_norm * r_norm / (ctx.delta * ny * ny) : 0.0;
    BoundReport rep("gap_bound", std::abs(ctx.lambda - rho), rhs);
    rep.add("rho", rho);
    rep.add("witness_lambda", ctx.lambda);
    if (std::isfinite(ctx.delta)) rep.add("delta", ctx.delta);
    rep.add("r_norm", r_norm);
    rep.add("y_norm", ny);
    return rep;
}

template <Field T>
BoundReport krylov_weinstein(const HermitianOperator<T>& a, const Vector<T>& y,
                             const SpectralDecomposition<T>& dec) {
    const double rho = rayleigh_quotient(a, y);
    const double lam = nearest_eigenvalue(dec.eigenvalues, rho);
    const double ny = norm(y);
    const double r_norm = norm(residual(a, y));
    BoundReport rep("krylov_weinstein", std::abs(lam - rho), r_norm / ny);
    rep.add("rho", rho);
    rep.add("witness_lambda", lam);
    rep.add("r_norm", r_norm);
    rep.add("y_norm", ny);
    return rep;
}

template <Field T>
BoundReport improved_posteriori(const HermitianOperator<T>& a, const Vector<T>& y,
                                const SpectralDecomposition<T>& dec) {
    if (auto rep = eigenspace_degenerate_report("improved_posteriori", a, y, dec)) return *rep;
    ProjectedResidual<T> pr;
    BoundReport rep = improved_core(a, y, dec, pr);
    add_projection_ingredients(rep, pr);
    rep.add("classical_rhs", pr.r_norm * pr.r_norm / (pr.y_norm * pr.y_norm));

    // Rebuilding from -A must give the same subspace S and the same bound.
    ProjectedResidual<T> neg;
    const BoundReport mirrored = improved_core(a.negated(), y, dec.negated(), neg);
    rep.add("neg_a_lhs_diff", std::abs(mirrored.lhs - rep.lhs));
    rep.add("neg_a_rhs_diff", std::abs(mirrored.rhs - rep.rhs));
    rep.add("neg_a_span_distance", std::max(pr.s.distance_from(neg.s.q1), pr.s.distance_from(neg.s.q2)));
    return rep;
}

template <Field T>
BoundReport improved_kato_temple(const HermitianOperator<T>& a, const Vector<T>& y,
                                 const SpectralDecomposition<T>& dec, std::optional<double> lambda_choice) {
    if (auto rep = eigenspace_degenerate_report("improved_kato_temple", a, y, dec)) return *rep;
    const auto pr = projected_residual(a, y, dec);
    const auto ctx = spectrum_context(dec, pr.rho, lambda_choice ? lambda_choice : pr.ctx.lambda_nearest);
    const double y2 = pr.y_norm * pr.y_norm;
    auto rep = kato_temple_report("improved_kato_temple", pr.rho, ctx, pr.ps_r_norm * pr.ps_r_norm / y2);
    const auto classical = kato_temple_report("kato_temple", pr.rho, ctx, pr.r_norm * pr.r_norm / y2);
    rep.add("ps_r_norm", pr.ps_r_norm);
    rep.add("r_norm", pr.r_norm);
    rep.add("y_norm", pr.y_norm);
    rep.add("classical_rhs", classical.rhs);
    rep.add("classical_interval_lower", classical.at("interval_lower"));
    rep.add("classical_interval_upper", classical.at("interval_upper"));
    return rep;
}

template <Field T>
BoundReport improved_krylov_weinstein(const HermitianOperator<T>& a, const Vector<T>& y,
                                      const SpectralDecomposition<T>& dec) {
    if (auto rep = eigenspace_degenerate_report("improved_krylov_weinstein", a, y, dec)) return *rep;
    const auto pr = projected_residual(a, y, dec);
    const double lam = nearest_eigenvalue(dec.eigenvalues, pr.rho);
    BoundReport rep("improved_krylov_weinstein", std::abs(lam - pr.rho), pr.ps_r_norm / pr.y_norm);
    rep.add("rho", pr.rho);
    rep.add("witness_lambda", lam);
    rep.add("ps_r_norm", pr.ps_r_norm);
    rep.add("r_norm", pr.r_norm);
    rep.add("y_norm", pr.y_norm);
    rep.add("classical_rhs", pr.r_norm / pr.y_norm);
    return rep;
}

template <Field T>
EigenvectorBoundReports eigenvector_error_bounds(const HermitianOperator<T>& a, const Vector<T>& y,
                                                 const SpectralDecomposition<T>& dec,
                                                 std::optional<double> lambda_choice) {
    const auto& ev = dec.eigenvalues;
    const double rho = rayleigh_quotient(a, y);
    const double coincide_tol = coincide_tolerance(rho, dec.eigenvalue_error);
    const double ny = norm(y);

    double lambda = dec.min();
    if (lambda_choice) {
        lambda = nearest_eigenvalue(ev, *lambda_choice);
        if (std::abs(lambda - *lambda_choice) > cluster_tolerance(*lambda_choice, dec.eigenvalue_error)) {
            throw HypothesisViolation("designated lambda is not an eigenvalue");
        }
    }
    const double cluster_tol = cluster_tolerance(lambda, dec.eigenvalue_error);
    const Vector<T> x = combine(eigenspace(dec, lambda), y);
    if (norm(x) <= 1e-12 * ny) {
        throw HypothesisViolation("y is orthogonal to the eigenspace of lambda (x = P_X y = 0)");
    }

    double delta = kInf;
    std::optional<double> below;  // nearest eigenvalue under the cluster of lambda
    std::optional<double> above;  // nearest eigenvalue over it
    for (double e : ev) {
        if (std::abs(e - lambda) <= cluster_tol) continue;
        delta = std::min(delta, std::abs(e - rho));
        if (e < lambda) below = e;
        if (e > lambda && !above) above = e;
    }
    if (!(delta > coincide_tol)) {
        throw HypothesisViolation("delta = 0: rho(y) coincides with a spectrum point other than lambda");
    }

    const auto ap = angle_parts(x, y);
    const Vector<T> r = residual(a, y);
    const double r_norm = norm(r);
    OrthonormalBasis<T> s(y.size());
    s.add(x);
    s.add(y);
    const double ps_r_norm = s.projected_norm(r);

    EigenvectorBoundReports out;
    const double classical_rhs = std::isfinite(delta) ? r_norm / (delta * ny) : 0.0;
    const double naive_rhs = std::isfinite(delta) ? ps_r_norm / (delta * ny) : 0.0;
    out.classical_sintheta = BoundReport("classical_sintheta", ap.sin, classical_rhs);
    out.naive_sintheta_violation = ap.sin > naive_rhs + 1e-12;
    auto& cl = out.classical_sintheta;
    cl.add("lambda", lambda);
    cl.add("rho", rho);
    cl.add("theta", ap.radians());
    cl.add("sin2_theta", ap.sin * ap.sin);
    if (std::isfinite(delta)) cl.add("delta", delta);
    cl.add("r_norm", r_norm);
    cl.add("ps_r_norm", ps_r_norm);
    cl.add("y_norm", ny);
    cl.add("naive_projected_rhs", naive_rhs);
    cl.add("naive_substitution_violated", out.naive_sintheta_violation ? 1.0 : 0.0);

    // Improved bounds: lambda must be an extreme eigenvalue and rho(y) must lie
    // strictly between it and the nearest spectrum point on the inside.
    std::optional<double> inner_neighbor;
    if (!below && above) inner_neighbor = above;
    if (below && !above) inner_neighbor = below;
    if (!inner_neighbor) {
        out.improved_skipped_reason = below && above ? "lambda is not an extreme eigenvalue"
                                                     : "spectrum has a single point";
        return out;
    }
    const double beta = *inner_neighbor;
    const double lo = std::min(lambda, beta);
    const double hi = std::max(lambda, beta);
    if (!(rho > lo + coincide_tol && rho < hi - coincide_tol)) {
        out.improved_skipped_reason = "rho(y) is not strictly between lambda and the nearest other spectrum point";
        return out;
    }

    const double ps = ps_r_norm / ny;
    BoundReport sin2("eigvec_sin2theta", 2.0 * ap.sin * ap.cos, 2.0 / std::abs(beta - lambda) * ps);
    BoundReport tan("eigvec_tantheta", ap.sin / ap.cos, ps / std::abs(beta - rho));
    for (BoundReport* rep : {&sin2, &tan}) {
        rep->add("lambda", lambda);
        rep->add("beta", beta);
        rep->add("rho", rho);
        rep->add("theta", ap.radians());
        rep->add("ps_r_norm", ps_r_norm);
        rep->add("r_norm", r_norm);
        rep->add("y_norm", ny);
    }
    if (ap.sin >= kGramSchmidtDropTol) {
        const auto rs = restrict_2d(a, x, y);
        const double eta = std::abs(rs.mu - lambda) >= std::abs(rs.nu - lambda) ? rs.mu : rs.nu;
        for (BoundReport* rep : {&sin2, &tan}) {
            rep->add("mu", rs.mu);
            rep->add("nu", rs.nu);
            rep->add("eta", eta);
        }
        tan.add("tan_from_residual", ps / std::abs(eta - rho));
    }
    out.sin2theta = std::move(sin2);
    out.tantheta = std::move(tan);
    return out;
}

#define RQCERT_INSTANTIATE_BOUNDS(T)                                                                         \
    template BoundReport apriori_sin2<T>(const HermitianOperator<T>&, const Vector<T>&, const Vector<T>&,    \
                                         const SpectralDecomposition<T>&);                                   \
    template BoundReport mixed_tan<T>(const HermitianOperator<T>&, const Vector<T>&, const Vector<T>&);      \
    template BoundReport temple<T>(const HermitianOperator<T>&, const Vector<T>&, const SpectrumContext&);   \
    template BoundReport kato_temple<T>(const HermitianOperator<T>&, const Vector<T>&, const SpectrumContext&); \
    template BoundReport gap_bound<T>(const HermitianOperator<T>&, const Vector<T>&, const SpectrumContext&); \
    template BoundReport krylov_weinstein<T>(const HermitianOperator<T>&, const Vector<T>&,                  \
                                             const SpectralDecomposition<T>&);                               \
    template BoundReport improved_posteriori<T>(const HermitianOperator<T>&, const Vector<T>&,               \
                                                const SpectralDecomposition<T>&);                            \
    template BoundReport improved_kato_temple<T>(const HermitianOperator<T>&, const Vector<T>&,              \
                                                 const SpectralDecomposition<T>&, std::optional<double>);    \
    template BoundReport improved_krylov_weinstein<T>(const HermitianOperator<T>&, const Vector<T>&,         \
                                                      const SpectralDecomposition<T>&);                      \
    template EigenvectorBoundReports eigenvector_error_bounds<T>(const HermitianOperator<T>&,                \
                                                                 const Vector<T>&,                           \
                                                                 const SpectralDecomposition<T>&,            \
                                                                 std::optional<double>);

RQCERT_INSTANTIATE_BOUNDS(double)
RQCERT_INSTANTIATE_BOUNDS(Complex)

#undef RQCERT_INSTANTIATE_BOUNDS

}  // namespace rqcert
