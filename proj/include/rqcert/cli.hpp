#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "rqcert/experiments.hpp"

namespace rqcert {

enum class Command { Bounds, Verify, Example };

enum ExitCode : int { kExitOk = 0, kExitCertificationFailure = 1, kExitInputError = 2 };

struct RunConfig {
    Command command = Command::Bounds;
    std::optional<std::filesystem::path> matrix_path;
    std::optional<std::filesystem::path> vector_path;
    std::optional<std::filesystem::path> ref_vector_path;
    std::string format = "text";
    std::size_t trials = 1000;
    std::size_t dim_min = 2;
    std::size_t dim_max = 12;
    std::uint64_t seed = 0;
    FieldKind field = FieldKind::Real;
    std::string example_name;
    int n = 64;
    double eps = 0.5;
    bool shifted = false;
    /// Eigenvalue designated for the eigenvector bounds.
    std::optional<double> lambda;
    /// example: write the experiment's operator and vector as Matrix Market.
    std::optional<std::filesystem::path> write_matrix;
    std::optional<std::filesystem::path> write_vector;
};

/// "MIN..MAX" or a single "N"; throws std::invalid_argument.
std::pair<std::size_t, std::size_t> parse_dims(const std::string& text);

/// Executes one command; returns an ExitCode. Diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rqcert
