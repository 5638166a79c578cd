#pragma once

#include "allroots/problem.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace allroots {

struct SweepOptions {
    std::vector<std::size_t> dimensions{2, 3, 4, 5};
    std::size_t start = 20;
    std::size_t stop = 1000;
    std::size_t step = 10;
    int repetitions = 50;
    std::size_t memory_budget_bytes = std::size_t{4} << 30;
    /// Once a run of dimension n averages more than this, larger N for that n are skipped.
    std::optional<double> max_seconds;
    unsigned workers = 0;

    void validate() const;
};

struct SweepRow {
    std::size_t dimension = 0;
    std::size_t points = 0;
    std::optional<std::size_t> cell_count;  // nullopt on overflow
    std::optional<double> mean_seconds;     // nullopt when skipped
    double stddev_seconds = 0.0;
    std::size_t solution_count = 0;
    std::string skipped;                    // reason, empty when run
};

/// x_k^2 - 25 = 0 for k = 1..n; 2^n roots at (+-5, ..., +-5).
Problem separable_quadratic(std::size_t dimension);

/// Upper bound on the pipeline's bulk allocations for an n-dimensional grid with N
/// points per axis: all value tensors plus all masks. nullopt on overflow.
std::optional<std::size_t> sweep_memory_estimate(std::size_t dimension, std::size_t points);

/// Times find_all_roots on separable_quadratic(n) over [-10, 10]^n for every
/// (n, N) in the options. `on_row` sees each row as soon as it is measured.
std::vector<SweepRow> scaling_sweep(const SweepOptions& options,
                                    const std::function<void(const SweepRow&)>& on_row = {});

/// Header "n,N,mean_seconds,cell_count,stddev_seconds,solution_count,status".
void write_sweep_csv_header(std::ostream& out);
void write_sweep_csv_row(std::ostream& out, const SweepRow& row);

}  // namespace allroots
