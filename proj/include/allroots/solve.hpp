#pragma once

#include "allroots/detect.hpp"
#include "allroots/grid.hpp"
#include "allroots/problem.hpp"
#include "allroots/refine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace allroots {

struct SolverConfig {
    DomainGrid grid;
    DetectionMode mode = DetectionMode::pairwise;
    NewtonOptions newton;
    int round_decimals = 6;
    std::optional<double> domain_slack;  // default: 1e-9 * axis width
    bool keep_out_of_domain = false;
    unsigned workers = 0;                // 0: all hardware threads
};

struct SolutionSet {
    std::vector<Solution> solutions;
    std::string label;
    SolverConfig config;
    std::size_t candidate_count = 0;

    std::size_t size() const { return solutions.size(); }
};

/// All roots of `problem` inside the configured box: detect sign-change
/// cells, polish every candidate with Newton, dedupe, then drop roots that
/// left the box. Results come back in candidate order and do not depend on
/// the worker count. An empty set is a valid outcome.
SolutionSet find_all_roots(const Problem& problem, const SolverConfig& config);

}  // namespace allroots
