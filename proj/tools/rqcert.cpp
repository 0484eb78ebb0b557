// rqcert: certify Rayleigh-quotient error bounds from the command line.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rqcert/cli.hpp"

namespace {

void add_format(CLI::App* app, rqcert::RunConfig& cfg) {
    app->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_random(CLI::App* app, rqcert::RunConfig& cfg, std::string& dims, std::string& field) {
    app->add_option("--trials", cfg.trials, "Number of random trials")->check(CLI::PositiveNumber);
    app->add_option("--dims", dims, "Dimension range MIN..MAX");
    app->add_option("--seed", cfg.seed, "Base RNG seed");
    app->add_option("--field", field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
}

}  // namespace

int main(int argc, char** argv) {
    rqcert::RunConfig cfg;
    std::string dims;
    std::string field = "real";
    std::string matrix, vector, ref_vector, write_matrix, write_vector;
    double lambda = 0.0;

    CLI::App app{"Rayleigh quotient perturbation identities and eigenvalue error bounds"};
    app.set_version_flag("--version", "rqcert 1.0.0");
    app.require_subcommand(1);

    auto* bounds = app.add_subcommand("bounds", "Evaluate every applicable bound for a matrix and vector");
    bounds->add_option("--matrix", matrix, "Hermitian matrix (Matrix Market)")->required();
    bounds->add_option("--vector", vector, "Trial vector y (Matrix Market or one value per line)")->required();
    bounds->add_option("--ref-vector", ref_vector, "Reference vector x");
    auto* lambda_opt = bounds->add_option("--lambda", lambda, "Eigenvalue targeted by the eigenvector bounds");
    add_format(bounds, cfg);

    auto* verify = app.add_subcommand("verify", "Check identities and bounds on seeded random problems");
    add_random(verify, cfg, dims, field);
    add_format(verify, cfg);

    auto* example = app.add_subcommand("example", "Run a named experiment");
    example->add_option("name", cfg.example_name, "davis-kahan, sin-theta, tightness or eigensolver")->required();
    example->add_option("--n", cfg.n, "Davis-Kahan truncation size");
    example->add_option("--eps", cfg.eps, "Davis-Kahan ratio in (0,1)");
    example->add_flag("--shifted", cfg.shifted, "Davis-Kahan with the shifted vector");
    example->add_option("--write-matrix", write_matrix, "Write the operator as Matrix Market");
    example->add_option("--write-vector", write_vector, "Write the trial vector as Matrix Market");
    add_random(example, cfg, dims, field);
    add_format(example, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rqcert::kExitInputError;
    }

    if (bounds->parsed()) {
        cfg.command = rqcert::Command::Bounds;
        cfg.matrix_path = matrix;
        cfg.vector_path = vector;
        if (!ref_vector.empty()) cfg.ref_vector_path = ref_vector;
        if (lambda_opt->count() > 0) cfg.lambda = lambda;
    } else if (verify->parsed()) {
        cfg.command = rqcert::Command::Verify;
    } else {
        cfg.command = rqcert::Command::Example;
        if (!write_matrix.empty()) cfg.write_matrix = write_matrix;
        if (!write_vector.empty()) cfg.write_vector = write_vector;
        // The eigensolver example defaults to the larger dimension range.
        if (cfg.example_name == "eigensolver") {
            cfg.dim_max = 50;
            if (example->get_option("--trials")->count() == 0) cfg.trials = 500;
        }
    }
    cfg.field = field == "complex" ? rqcert::FieldKind::Complex : rqcert::FieldKind::Real;
    if (!dims.empty()) {
        try {
            std::tie(cfg.dim_min, cfg.dim_max) = rqcert::parse_dims(dims);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << '\n';
            return rqcert::kExitInputError;
        }
    }
    return rqcert::run(cfg, std::cout, std::cerr);
}
