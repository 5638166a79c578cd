#include "allroots/solve.hpp"

#include "parallel.hpp"

#include <stdexcept>
#include <string>

namespace allroots {

SolutionSet find_all_roots(const Problem& problem, const SolverConfig& config) {
    if (problem.dimension() != config.grid.dimension())
        throw DimensionError("problem has " + std::to_string(problem.dimension()) + " variables, grid has " +
                             std::to_string(config.grid.dimension()) + " axes");
    config.newton.validate();
    if (config.round_decimals < 0) throw std::invalid_argument("round_decimals must be non-negative");
    if (config.newton.jacobian == JacobianKind::analytic && !problem.has_analytic_jacobian())
        throw std::invalid_argument("analytic Jacobian requested but the problem does not define one");

    CandidateSet candidates = detect_candidates(problem, config.grid, config.mode, config.workers);

    std::vector<RefinementResult> results(candidates.size());
    detail::parallel_for(candidates.size(), config.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            results[i] = newton_raphson(problem, candidates.entries[i].coordinates, config.newton);
    }, 8);

    SolutionSet out;
    out.label = problem.label();
    out.config = config;
    out.candidate_count = candidates.size();
    out.solutions = dedupe(std::span<const RefinementResult>(results), config.round_decimals);
    if (!config.keep_out_of_domain) out.solutions = domain_filter(out.solutions, config.grid, config.domain_slack);
    return out;
}

}  // namespace allroots
