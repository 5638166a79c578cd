#pragma once

#include "allroots/expr.hpp"
#include "allroots/solve.hpp"

#include <istream>
#include <ostream>
#include <vector>

namespace allroots {

struct TimingSummary {
    int repetitions = 1;
    double mean_seconds = 0.0;
    double stddev_seconds = 0.0;
};

/// One parsed row of a solutions file.
struct SolutionRow {
    Point coordinates;
    double residual_norm = 0.0;
    int iterations = 0;
};

/// Header "<var_1>,...,<var_n>,residual_norm,iterations", then one row per
/// solution. Reals carry 17 significant digits.
void write_solutions_csv(std::ostream& out, const SolutionSet& solutions, const VariableSet& vars);

/// One JSON object per solution, then a trailer object with the config echo and timing.
void write_solutions_jsonl(std::ostream& out, const SolutionSet& solutions, const VariableSet& vars,
                           const TimingSummary& timing);

/// Throws std::invalid_argument on malformed input.
std::vector<SolutionRow> read_solutions_csv(std::istream& in);
/// Skips the trailer object.
std::vector<SolutionRow> read_solutions_jsonl(std::istream& in);

}  // namespace allroots
