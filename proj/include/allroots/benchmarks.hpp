#pragma once

#include "allroots/solve.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace allroots {

enum class BenchmarkId { effati, girder_reduced, girder_raw3d, reactor, chen };

std::string_view to_string(BenchmarkId id);
/// Throws std::invalid_argument naming the unknown id.
BenchmarkId parse_benchmark_id(std::string_view text);

/// Stirred-tank reactor constants.
namespace reactor_constants {
inline constexpr double gamma = 1000.0;
inline constexpr double damkohler = 22.0;  // D
inline constexpr double beta1 = 2.0;
inline constexpr double beta2 = 2.0;
inline constexpr double r_min = 0.935;
inline constexpr double r_max = 0.995;
}  // namespace reactor_constants

struct BenchmarkProblem {
    BenchmarkId id = BenchmarkId::effati;
    double parameter = 0.0;                      // effati: box half-width; reactor: R; unused otherwise
    std::optional<int> expected_solution_count;  // known reference counts only
    DomainGrid domain;
    std::string label;
};

/// cos/sin system on [-w, w]^2; reference counts for w = 2, 10, 100.
BenchmarkProblem effati(double half_width, std::size_t points = 500);
/// Thin-walled girder with x2 eliminated, variables (x1, x3) on [-40, 40]^2.
BenchmarkProblem girder_reduced(std::size_t points = 500);
/// Original three-variable girder system on [-40, 40]^3. No reference count:
/// the system is singular where x1 + x2 = 2 x3.
BenchmarkProblem girder_raw3d(std::size_t points = 150);
/// Two-reactor system on [0, 1]^2; R must lie in [0.935, 0.995].
BenchmarkProblem reactor(double r, std::size_t points = 500);
BenchmarkProblem chen(std::size_t points = 500);

/// The 13 R values 0.935, 0.940, ..., 0.995.
std::vector<double> reactor_sweep();

/// Builds a benchmark from its textual id. `parameter` is the effati
/// half-width (default 2) or the reactor R (required).
BenchmarkProblem make_benchmark(std::string_view id, std::optional<double> parameter = std::nullopt,
                                std::optional<std::size_t> points = std::nullopt);

/// Expressions (with analytic Jacobian where available) plus the canonical solver configuration.
std::pair<Problem, SolverConfig> builtin_problem(const BenchmarkProblem& benchmark);

struct BenchmarkReport {
    std::string label;
    SolutionSet solutions;
    int repetitions = 0;
    double mean_seconds = 0.0;
    double stddev_seconds = 0.0;
    bool consistent = true;  // every repetition produced the same solutions
    std::optional<int> expected_solution_count;

    std::size_t solution_count() const { return solutions.size(); }
    /// nullopt when no reference count exists.
    std::optional<bool> pass() const;
};

/// Runs find_all_roots `repetitions` times and times each run.
BenchmarkReport run_benchmark(const BenchmarkProblem& benchmark, int repetitions = 50,
                              std::optional<SolverConfig> config = std::nullopt);

}  // namespace allroots
