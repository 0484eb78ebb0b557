#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rqcert/bounds.hpp"

namespace rqcert {

enum class FieldKind { Real, Complex };

const char* to_string(FieldKind f);

/// Pass count and worst normalized residual of one invariant across trials.
struct InvariantTally {
    std::string name;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double worst = 0.0;
    double tolerance = 0.0;

    void record(double value);
    bool ok() const noexcept { return violations == 0; }
};

struct ExperimentResult {
    std::string name;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<BoundReport> reports;
    std::vector<InvariantTally> tallies;
    bool pass = false;
    std::string notes;

    void add(std::string key, double value) { scalars.emplace_back(std::move(key), value); }
    std::optional<double> scalar(std::string_view key) const;
    /// Throws std::out_of_range on a missing key.
    double at(std::string_view key) const;
    const BoundReport* report(std::string_view bound_name) const;
    const InvariantTally* tally(std::string_view name) const;
};

struct RealProblem {
    HermitianOperator<double> a;
    Vector<double> y;
};

/// A = diag(eps^-k), y = (eps^k), k = 0..n-1; shifted uses y = (0, 1, eps, eps^2, ...).
RealProblem davis_kahan_problem(int n, double eps, bool shifted = false);
ExperimentResult davis_kahan(int n, double eps, bool shifted = false);

/// A = diag(1, 0, -1), y = (1, 1, 1).
RealProblem sin_theta_problem();

/// diag(1, 0, -1) with y = (1, 1, 1): the projected residual vanishes but sin(theta) does not.
ExperimentResult sin_theta_counterexample();

/// Block-diagonal operators where the mixed and a priori bounds are equalities.
ExperimentResult invariant_subspace_tightness(std::uint64_t seed);

/// Randomized check of every identity, inequality and bound invariant.
ExperimentResult random_verification(std::size_t trials, std::size_t dim_min, std::size_t dim_max, FieldKind field,
                                     std::uint64_t seed);

/// Jacobi reconstruction and orthogonality on random Hermitian matrices.
ExperimentResult eigensolver_verification(std::size_t trials, std::size_t dim_min, std::size_t dim_max,
                                          FieldKind field, std::uint64_t seed);

/// Per-trial generator, derived from (seed, trial) only.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Gaussian entries, Hermitian part taken.
template <Field T>
HermitianOperator<T> random_hermitian(std::size_t n, std::mt19937_64& rng);

template <Field T>
Vector<T> random_vector(std::size_t n, std::mt19937_64& rng);

}  // namespace rqcert
