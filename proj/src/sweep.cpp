#include "allroots/sweep.hpp"

#include "allroots/format.hpp"
#include "allroots/solve.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace allroots {

void SweepOptions::validate() const {
    if (dimensions.empty()) throw std::invalid_argument("sweep needs at least one dimension");
    for (std::size_t n : dimensions)
        if (n < 2 || n > 5) throw std::invalid_argument("sweep dimensions must be within 2..5");
    if (start < 20) throw std::invalid_argument("sweep must start at 20 points or more");
    if (stop < start) throw std::invalid_argument("sweep stop must not be below start");
    if (step == 0) throw std::invalid_argument("sweep step must be positive");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
}

Problem separable_quadratic(std::size_t dimension) {
    std::vector<std::string> vars;
    std::vector<std::string> eqs;
    for (std::size_t k = 1; k <= dimension; ++k) {
        vars.push_back("x" + std::to_string(k));
        eqs.push_back("x" + std::to_string(k) + "^2-25");
    }
    return Problem::from_text(vars, eqs, std::nullopt, "separable_quadratic_" + std::to_string(dimension) + "d");
}

std::optional<std::size_t> sweep_memory_estimate(std::size_t dimension, std::size_t points) {
    std::vector<std::size_t> nodes(dimension, points);
    std::vector<std::size_t> cells(dimension, points - 1);
    auto node_count = checked_product(nodes);
    auto cell_count = checked_product(cells);
    if (!node_count || !cell_count) return std::nullopt;
    constexpr std::size_t max = std::numeric_limits<std::size_t>::max();
    const std::size_t per_tensor = sizeof(double);
    if (*node_count > max / per_tensor / dimension) return std::nullopt;
    const std::size_t tensors = *node_count * per_tensor * dimension;
    if (*cell_count > max / (dimension + 1)) return std::nullopt;
    const std::size_t masks = *cell_count * (dimension + 1);
    if (tensors > max - masks) return std::nullopt;
    return tensors + masks;
}

std::vector<SweepRow> scaling_sweep(const SweepOptions& options, const std::function<void(const SweepRow&)>& on_row) {
    options.validate();
    std::vector<SweepRow> rows;
    for (std::size_t n : options.dimensions) {
        const Problem problem = separable_quadratic(n);
        bool too_slow = false;
        for (std::size_t points = options.start; points <= options.stop; points += options.step) {
            SweepRow row;
            row.dimension = n;
            row.points = points;
            std::vector<std::size_t> cells(n, points - 1);
            row.cell_count = checked_product(cells);

            auto bytes = sweep_memory_estimate(n, points);
            if (!bytes || *bytes > options.memory_budget_bytes) {
                row.skipped = "memory budget";
            } else if (too_slow) {
                row.skipped = "time budget";
            } else {
                SolverConfig cfg;
                cfg.grid = DomainGrid::uniform(n, -10.0, 10.0, points);
                cfg.workers = options.workers;
                std::vector<double> seconds;
                for (int rep = 0; rep < options.repetitions; ++rep) {
                    auto t0 = std::chrono::steady_clock::now();
                    auto result = find_all_roots(problem, cfg);
                    auto t1 = std::chrono::steady_clock::now();
                    seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
                    row.solution_count = result.size();
                }
                const double mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / seconds.size();
                double ss = 0.0;
                for (double t : seconds) ss += (t - mean) * (t - mean);
                row.mean_seconds = mean;
                row.stddev_seconds = seconds.size() > 1 ? std::sqrt(ss / (seconds.size() - 1)) : 0.0;
                if (options.max_seconds && mean > *options.max_seconds) too_slow = true;
            }
            if (on_row) on_row(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_sweep_csv_header(std::ostream& out) {
    out << "n,N,mean_seconds,cell_count,stddev_seconds,solution_count,status\n";
}

void write_sweep_csv_row(std::ostream& out, const SweepRow& row) {
    out << row.dimension << ',' << row.points << ',';
    if (row.mean_seconds) out << format_double(*row.mean_seconds);
    out << ',';
    if (row.cell_count) out << *row.cell_count;
    out << ',';
    if (row.mean_seconds) out << format_double(row.stddev_seconds);
    out << ',';
    if (row.mean_seconds) out << row.solution_count;
    out << ',' << (row.skipped.empty() ? "ok" : "skipped: " + row.skipped) << '\n';
}

}  // namespace allroots
