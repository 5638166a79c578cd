#pragma once

#include "allroots/grid.hpp"
#include "allroots/problem.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace allroots {

enum class JacobianKind { analytic, finite_difference };

std::string_view to_string(JacobianKind kind);
JacobianKind parse_jacobian_kind(std::string_view text);

struct NewtonOptions {
    double residual_tol = 1e-10;     // max-norm of F
    double step_tol = 1e-12;         // max-norm of the update
    int max_iterations = 100;
    double divergence_bound = 1e12;  // max-norm of the iterate
    JacobianKind jacobian = JacobianKind::finite_difference;

    /// Throws std::invalid_argument on non-positive tolerances or max_iterations < 1.
    void validate() const;
};

enum class NewtonStatus { converged, non_converged, diverged, singular_jacobian };

std::string_view to_string(NewtonStatus status);

struct RefinementResult {
    NewtonStatus status = NewtonStatus::non_converged;
    Point root;                  // meaningful only when converged
    double residual_norm = 0.0;
    int iterations = 0;
    Point start;

    bool converged() const { return status == NewtonStatus::converged; }
};

/// Forward differences, h_j = sqrt(eps) * max(|x_j|, 1). Non-finite entries propagate.
SquareMatrix numeric_jacobian(const Problem& problem, std::span<const double> x);

/// Solves A y = b in place by LU with partial pivoting.
/// Returns false when the smallest pivot falls below 1e-14 * max|A_ij| or A is not finite.
bool lu_solve(SquareMatrix a, std::span<double> b);

/// Undamped Newton-Raphson from `x0`. Never throws for numerical trouble;
/// the status carries the reason.
RefinementResult newton_raphson(const Problem& problem, std::span<const double> x0, const NewtonOptions& options = {});

struct Solution {
    Point coordinates;   // unrounded
    Point key;           // coordinates rounded to the dedup decimals
    double residual_norm = 0.0;
    int iterations = 0;
    std::size_t source = 0;  // candidate index the solution came from
};

/// Rounds half away from zero to `decimals` places; -0 becomes +0.
Point rounded_key(std::span<const double> x, int decimals);

/// Drops non-converged results, then keeps the first result per rounded key.
/// `source` of each survivor is its position in `results`.
std::vector<Solution> dedupe(std::span<const RefinementResult> results, int round_decimals = 6);

/// Re-keys and deduplicates already-refined solutions (idempotent).
std::vector<Solution> dedupe(std::span<const Solution> solutions, int round_decimals = 6);

/// Keeps solutions with lower_k - slack_k <= x_k <= upper_k + slack_k on every axis.
/// Default slack per axis is 1e-9 * (upper_k - lower_k).
std::vector<Solution> domain_filter(std::span<const Solution> solutions, const DomainGrid& grid,
                                    std::optional<double> slack = std::nullopt);

}  // namespace allroots
