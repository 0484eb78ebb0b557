#include "rqcert/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "rqcert/errors.hpp"
#include "rqcert/identities.hpp"
#include "rqcert/matrix_market.hpp"
#include "rqcert/report.hpp"

namespace rqcert {

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
    auto parse = [&](std::string_view s) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw std::invalid_argument("malformed --dims '" + text + "', expected MIN..MAX");
        }
        return v;
    };
    const auto dots = text.find("..");
    const std::string_view sv(text);
    const std::size_t lo = parse(dots == std::string::npos ? sv : sv.substr(0, dots));
    const std::size_t hi = dots == std::string::npos ? lo : parse(sv.substr(dots + 2));
    if (lo < 2 || lo > hi) throw std::invalid_argument("--dims needs 2 <= MIN <= MAX");
    return {lo, hi};
}

namespace {

struct Record {
    std::string name;
    std::optional<BoundReport> report;
    std::string reason;
};

struct IdentityRecord {
    std::string name;
    bool skipped = false;
    std::string reason;
    bool pass = true;
    std::string equality_case;
    std::vector<std::pair<std::string, double>> values;
};

bool certified(const std::vector<Record>& records) {
    for (const auto& r : records)
        if (r.report && !r.report->holds) return false;
    return true;
}

template <class F>
void attempt(std::vector<Record>& out, const std::string& name, F&& f) {
    try {
        out.push_back({name, f(), ""});
    } catch (const HypothesisViolation& e) {
        out.push_back({name, std::nullopt, e.what()});
    } catch (const SpectrumCoincidence& e) {
        out.push_back({name, std::nullopt, e.what()});
    } catch (const DegenerateSubspace& e) {
        out.push_back({name, std::nullopt, e.what()});
    } catch (const NotAnEigenvector& e) {
        out.push_back({name, std::nullopt, e.what()});
    }
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void print_values(std::ostream& out, const std::vector<std::pair<std::string, double>>& values, const char* indent) {
    for (const auto& [k, v] : values) out << indent << k << " = " << format_double(v) << '\n';
}

void print_record(std::ostream& out, const Record& r) {
    out << "  " << r.name;
    if (!r.report) {
        out << "  skipped: " << r.reason << '\n';
        return;
    }
    const auto& b = *r.report;
    out << "  lhs=" << format_double(b.lhs) << "  rhs=" << format_double(b.rhs) << "  holds=" << yes_no(b.holds)
        << "  equality=" << yes_no(b.equality) << '\n';
    print_values(out, b.ingredients, "      ");
}

Json record_json(const Record& r) { return r.report ? to_json(*r.report) : skipped_json(r.name, r.reason); }

Json identity_json(const IdentityRecord& r) {
    Json j;
    j["name"] = r.name;
    j["skipped"] = r.skipped;
    j["reason"] = r.skipped ? Json(r.reason) : Json(nullptr);
    j["pass"] = r.skipped ? Json(nullptr) : Json(r.pass);
    j["equality_case"] = r.equality_case.empty() ? Json(nullptr) : Json(r.equality_case);
    Json v = Json::object();
    for (const auto& [k, x] : r.values) v[k] = std::isfinite(x) ? Json(x) : Json(nullptr);
    j["values"] = std::move(v);
    return j;
}

Json header_json(const char* command, Json inputs) {
    Json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    return j;
}

Json path_json(const std::optional<std::filesystem::path>& p) { return p ? Json(p->string()) : Json(nullptr); }

// ---------------------------------------------------------------------------
// bounds

template <Field T>
HermitianOperator<T> make_operator(const MarketMatrix& m) {
    if (m.rows != m.cols) throw DimensionMismatch("matrix is " + std::to_string(m.rows) + "x" + std::to_string(m.cols) + ", not square");
    bool diagonal = true;
    for (std::size_t i = 0; i < m.rows && diagonal; ++i)
        for (std::size_t j = 0; j < m.cols && diagonal; ++j)
            if (i == j ? m.at(i, j).imag() != 0.0 : m.at(i, j) != Complex{}) diagonal = false;
    if (diagonal) {
        std::vector<double> d(m.rows);
        for (std::size_t i = 0; i < m.rows; ++i) d[i] = m.at(i, i).real();
        return HermitianOperator<T>::diagonal(std::move(d));
    }
    return HermitianOperator<T>::dense(to_dense<T>(m));
}

template <Field T>
std::vector<IdentityRecord> identity_checks(const HermitianOperator<T>& a, const Vector<T>& x, const Vector<T>& y) {
    std::vector<IdentityRecord> out;
    const char* names[] = {"residual_gap_identity", "tangent_bounds", "sine_bounds", "eigenvector_identities"};
    if (angle_parts(x, y).sin < kAngleTol) {
        for (const char* n : names) out.push_back({n, true, "reference vector and y are collinear", true, "", {}});
        return out;
    }
    const double scale = identity_scale(a, x, y);
    const double tol = 1e-10 * scale;

    IdentityRecord rg{names[0], false, "", true, "", {}};
    const auto g = residual_gap_identity(a, x, y, y);
    const double an = std::max(1.0, a.norm());
    rg.pass = g.error() <= 1e-10 * an * an;
    rg.values = {{"lhs", g.lhs}, {"rhs", g.rhs}, {"error", g.error()}};
    out.push_back(std::move(rg));

    IdentityRecord tr{names[1], false, "", true, "", {}};
    const auto tb = tangent_bounds(a, x, y);
    tr.pass = tb.xi_minus <= tb.delta_rho + tol && tb.delta_rho <= tb.xi_plus + tol;
    tr.equality_case = to_string(tb.equality_case);
    tr.values = {{"xi_minus", tb.xi_minus}, {"delta_rho", tb.delta_rho}, {"xi_plus", tb.xi_plus},
                 {"angle", tb.angle}, {"tangent_unbounded", tb.tangent_unbounded ? 1.0 : 0.0}};
    out.push_back(std::move(tr));

    IdentityRecord sr{names[2], false, "", true, "", {}};
    const auto sb = sine_bounds(a, x, y);
    sr.pass = sb.psi_minus <= sb.delta_rho + tol && sb.delta_rho <= sb.psi_plus + tol &&
              std::abs(sb.sum_difference_identity - sb.delta_rho) <= tol;
    sr.equality_case = to_string(sb.equality_case);
    sr.values = {{"psi_minus", sb.psi_minus}, {"delta_rho", sb.delta_rho}, {"psi_plus", sb.psi_plus},
                 {"sum_difference_identity", sb.sum_difference_identity}, {"gap", sb.gap}};
    out.push_back(std::move(sr));

    IdentityRecord er{names[3], false, "", true, "", {}};
    if (!is_certified_eigenvector(a, x)) {
        er.skipped = true;
        er.reason = "reference vector is not an eigenvector of A";
    } else {
        const auto ei = eigenvector_identities(a, x, y);
        er.pass = std::abs(ei.delta_rho - ei.sine2_gap) <= tol;
        er.values = {{"lambda", ei.lambda}, {"rho", ei.rho_y}, {"delta_rho", ei.delta_rho},
                     {"sine2_gap", ei.sine2_gap}, {"tan_theta", ei.tan_theta}};
        if (ei.tan_mixed) {
            er.pass = er.pass && std::abs(ei.delta_rho - *ei.tan_mixed) <= tol;
            er.values.emplace_back("tan_mixed", *ei.tan_mixed);
        }
        if (ei.tan_from_residual) er.values.emplace_back("tan_from_residual", *ei.tan_from_residual);
    }
    out.push_back(std::move(er));
    return out;
}

template <Field T>
int run_bounds(const RunConfig& cfg, const MarketMatrix& ma, const MarketMatrix& my,
               const std::optional<MarketMatrix>& mx, std::ostream& out) {
    const auto a = make_operator<T>(ma);
    const Vector<T> y = to_vector<T>(my);
    if (y.size() != a.dim()) throw DimensionMismatch("vector length " + std::to_string(y.size()) + " does not match matrix dimension " + std::to_string(a.dim()));
    std::optional<Vector<T>> x;
    if (mx) {
        x = to_vector<T>(*mx);
        if (x->size() != a.dim()) throw DimensionMismatch("reference vector length does not match matrix dimension");
    }
    const auto dec = eigendecompose(a);
    const double rho = rayleigh_quotient(a, y);

    std::optional<SpectrumContext> ctx;
    std::string ctx_reason;
    try {
        ctx = spectrum_context(dec, rho);
    } catch (const SpectrumCoincidence& e) {
        ctx_reason = e.what();
    }
    // Kato-Temple and the gap bound accept rho on the spectrum once lambda is fixed.
    const SpectrumContext lam_ctx = ctx ? *ctx : spectrum_context(dec, rho, spectrum_context(dec.eigenvalues, rho, dec.min()).lambda_nearest);

    std::vector<Record> records;
    const std::string no_ref = "needs a reference eigenvector (--ref-vector)";
    if (x) {
        attempt(records, "apriori_sin2", [&] { return apriori_sin2(a, *x, y, dec); });
        attempt(records, "mixed_tan", [&] { return mixed_tan(a, *x, y); });
    } else {
        records.push_back({"apriori_sin2", std::nullopt, no_ref});
        records.push_back({"mixed_tan", std::nullopt, no_ref});
    }
    if (ctx) {
        attempt(records, "temple", [&] { return temple(a, y, *ctx); });
    } else {
        records.push_back({"temple", std::nullopt, ctx_reason});
    }
    attempt(records, "kato_temple", [&] { return kato_temple(a, y, lam_ctx); });
    attempt(records, "gap_bound", [&] { return gap_bound(a, y, lam_ctx); });
    attempt(records, "krylov_weinstein", [&] { return krylov_weinstein(a, y, dec); });
    attempt(records, "improved_posteriori", [&] { return improved_posteriori(a, y, dec); });
    attempt(records, "improved_kato_temple", [&] { return improved_kato_temple(a, y, dec); });
    attempt(records, "improved_krylov_weinstein", [&] { return improved_krylov_weinstein(a, y, dec); });

    std::optional<double> lambda = cfg.lambda;
    if (!lambda && x && is_certified_eigenvector(a, *x)) lambda = rayleigh_quotient(a, *x);
    try {
        const auto ev = eigenvector_error_bounds(a, y, dec, lambda);
        const std::string why = ev.improved_skipped_reason;
        records.push_back({"eigvec_sin2theta", ev.sin2theta, why});
        records.push_back({"eigvec_tantheta", ev.tantheta, why});
        records.push_back({"classical_sintheta", ev.classical_sintheta, ""});
    } catch (const HypothesisViolation& e) {
        for (const char* n : {"eigvec_sin2theta", "eigvec_tantheta", "classical_sintheta"})
            records.push_back({n, std::nullopt, e.what()});
    }

    std::vector<IdentityRecord> ids;
    if (x) ids = identity_checks(a, *x, y);

    bool ok = certified(records);
    for (const auto& r : ids) ok = ok && (r.skipped || r.pass);

    if (cfg.format == "json") {
        Json inputs;
        inputs["matrix"] = path_json(cfg.matrix_path);
        inputs["vector"] = path_json(cfg.vector_path);
        inputs["ref_vector"] = path_json(cfg.ref_vector_path);
        inputs["field"] = field_name<T>();
        inputs["dim"] = a.dim();
        inputs["operator"] = a.is_diagonal() ? "diagonal" : "dense";
        inputs["lambda"] = lambda ? Json(*lambda) : Json(nullptr);
        Json j = header_json("bounds", std::move(inputs));
        j["rho"] = rho;
        Json reps = Json::array();
        for (const auto& r : records) reps.push_back(record_json(r));
        j["reports"] = std::move(reps);
        Json idj = Json::array();
        for (const auto& r : ids) idj.push_back(identity_json(r));
        j["identities"] = std::move(idj);
        j["status"] = ok ? "ok" : "certification_failure";
        out << dump(j);
    } else {
        out << "bounds  dim=" << a.dim() << "  field=" << field_name<T>()
            << "  operator=" << (a.is_diagonal() ? "diagonal" : "dense") << "  rho=" << format_double(rho) << '\n';
        for (const auto& r : records) print_record(out, r);
        if (!ids.empty()) out << "identities\n";
        for (const auto& r : ids) {
            out << "  " << r.name;
            if (r.skipped) {
                out << "  skipped: " << r.reason << '\n';
                continue;
            }
            out << "  pass=" << yes_no(r.pass);
            if (!r.equality_case.empty()) out << "  equality_case=" << r.equality_case;
            out << '\n';
            print_values(out, r.values, "      ");
        }
        out << "status: " << (ok ? "ok" : "certification failure") << '\n';
    }
    return ok ? kExitOk : kExitCertificationFailure;
}

int command_bounds(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.matrix_path || !cfg.vector_path) throw std::invalid_argument("bounds needs --matrix and --vector");
    const auto ma = read_matrix_market_file(*cfg.matrix_path);
    const auto my = read_vector_file(*cfg.vector_path);
    std::optional<MarketMatrix> mx;
    if (cfg.ref_vector_path) mx = read_vector_file(*cfg.ref_vector_path);
    const bool complex = ma.is_complex() || my.is_complex() || (mx && mx->is_complex());
    return complex ? run_bounds<Complex>(cfg, ma, my, mx, out) : run_bounds<double>(cfg, ma, my, mx, out);
}

// ---------------------------------------------------------------------------
// verify / example

int emit_experiment(const char* command, Json inputs, const ExperimentResult& e, const RunConfig& cfg,
                    std::ostream& out) {
    bool ok = e.pass;
    for (const auto& r : e.reports) ok = ok && r.holds;
    if (cfg.format == "json") {
        Json j = header_json(command, std::move(inputs));
        Json reps = Json::array();
        for (const auto& r : e.reports) reps.push_back(to_json(r));
        j["reports"] = std::move(reps);
        j["experiment"] = to_json(e);
        j["status"] = ok ? "ok" : "certification_failure";
        out << dump(j);
    } else {
        out << command << ' ' << e.name << "  pass=" << yes_no(e.pass) << '\n';
        if (!e.notes.empty()) out << "  notes: " << e.notes << '\n';
        print_values(out, e.scalars, "  ");
        if (!e.reports.empty()) out << "reports\n";
        for (const auto& r : e.reports) print_record(out, {r.bound_name, r, ""});
        if (!e.tallies.empty()) out << "invariants\n";
        for (const auto& t : e.tallies) {
            out << "  " << t.name << "  checks=" << t.checks << "  violations=" << t.violations
                << "  worst=" << format_double(t.worst) << "  tolerance=" << format_double(t.tolerance) << '\n';
        }
        out << "status: " << (ok ? "ok" : "certification failure") << '\n';
    }
    return ok ? kExitOk : kExitCertificationFailure;
}

int command_verify(const RunConfig& cfg, std::ostream& out) {
    const auto e = random_verification(cfg.trials, cfg.dim_min, cfg.dim_max, cfg.field, cfg.seed);
    Json inputs;
    inputs["trials"] = cfg.trials;
    inputs["dim_min"] = cfg.dim_min;
    inputs["dim_max"] = cfg.dim_max;
    inputs["field"] = to_string(cfg.field);
    inputs["seed"] = cfg.seed;
    return emit_experiment("verify", std::move(inputs), e, cfg, out);
}

void write_problem(const RunConfig& cfg, const RealProblem& p) {
    if (cfg.write_matrix) {
        std::ofstream f(*cfg.write_matrix);
        if (!f) throw std::invalid_argument("cannot write " + cfg.write_matrix->string());
        write_matrix_market(f, p.a.to_dense());
    }
    if (cfg.write_vector) {
        std::ofstream f(*cfg.write_vector);
        if (!f) throw std::invalid_argument("cannot write " + cfg.write_vector->string());
        write_vector(f, p.y);
    }
}

int command_example(const RunConfig& cfg, std::ostream& out) {
    Json inputs;
    inputs["example"] = cfg.example_name;
    const auto& name = cfg.example_name;
    if (name != "davis-kahan" && name != "sin-theta" && (cfg.write_matrix || cfg.write_vector)) {
        throw std::invalid_argument("--write-matrix/--write-vector apply to davis-kahan and sin-theta only");
    }
    if (name == "davis-kahan") {
        inputs["n"] = cfg.n;
        inputs["eps"] = cfg.eps;
        inputs["shifted"] = cfg.shifted;
        write_problem(cfg, davis_kahan_problem(cfg.n, cfg.eps, cfg.shifted));
        return emit_experiment("example", std::move(inputs), davis_kahan(cfg.n, cfg.eps, cfg.shifted), cfg, out);
    }
    if (name == "sin-theta") {
        write_problem(cfg, sin_theta_problem());
        return emit_experiment("example", std::move(inputs), sin_theta_counterexample(), cfg, out);
    }
    if (name == "tightness") {
        inputs["seed"] = cfg.seed;
        return emit_experiment("example", std::move(inputs), invariant_subspace_tightness(cfg.seed), cfg, out);
    }
    if (name == "eigensolver") {
        inputs["trials"] = cfg.trials;
        inputs["dim_min"] = cfg.dim_min;
        inputs["dim_max"] = cfg.dim_max;
        inputs["field"] = to_string(cfg.field);
        inputs["seed"] = cfg.seed;
        const auto e = eigensolver_verification(cfg.trials, cfg.dim_min, cfg.dim_max, cfg.field, cfg.seed);
        return emit_experiment("example", std::move(inputs), e, cfg, out);
    }
    throw std::invalid_argument("unknown example '" + name + "' (davis-kahan, sin-theta, tightness, eigensolver)");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.format != "text" && cfg.format != "json") throw std::invalid_argument("--format must be text or json");
        switch (cfg.command) {
            case Command::Bounds:
                return command_bounds(cfg, out);
            case Command::Verify:
                return command_verify(cfg, out);
            case Command::Example:
                if (cfg.example_name.empty()) throw std::invalid_argument("example needs a name");
                return command_example(cfg, out);
        }
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitCertificationFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace rqcert
