#include "allroots/refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace allroots {

std::string_view to_string(JacobianKind kind) {
    return kind == JacobianKind::analytic ? "analytic" : "finite_difference";
}

JacobianKind parse_jacobian_kind(std::string_view text) {
    if (text == "analytic") return JacobianKind::analytic;
    if (text == "finite_difference" || text == "numeric") return JacobianKind::finite_difference;
    throw std::invalid_argument("unknown jacobian kind '" + std::string(text) +
                                "' (expected analytic or finite_difference)");
}

std::string_view to_string(NewtonStatus status) {
    switch (status) {
        case NewtonStatus::converged: return "converged";
        case NewtonStatus::non_converged: return "non_converged";
        case NewtonStatus::diverged: return "diverged";
        case NewtonStatus::singular_jacobian: return "singular_jacobian";
    }
    return "unknown";
}

void NewtonOptions::validate() const {
    if (!(residual_tol > 0.0)) throw std::invalid_argument("residual_tol must be positive");
    if (!(step_tol > 0.0)) throw std::invalid_argument("step_tol must be positive");
    if (!(divergence_bound > 0.0)) throw std::invalid_argument("divergence_bound must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
}

SquareMatrix numeric_jacobian(const Problem& problem, std::span<const double> x) {
    const std::size_t n = problem.dimension();
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    SquareMatrix J(n);
    std::vector<double> f0 = problem.evaluate(x);
    std::vector<double> shifted(x.begin(), x.end());
    std::vector<double> f1(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double h = root_eps * std::max(std::fabs(x[j]), 1.0);
        shifted[j] = x[j] + h;
        problem.evaluate(shifted, f1);
        shifted[j] = x[j];
        for (std::size_t i = 0; i < n; ++i) J(i, j) = (f1[i] - f0[i]) / h;
    }
    return J;
}

bool lu_solve(SquareMatrix a, std::span<double> b) {
    const std::size_t n = a.n;
    double scale = 0.0;
    for (double v : a.values) {
        if (!std::isfinite(v)) return false;
        scale = std::max(scale, std::fabs(v));
    }
    const double threshold = 1e-14 * scale;
    if (scale == 0.0) return false;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
        if (std::fabs(a(pivot, k)) < threshold) return false;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            std::swap(b[k], b[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            a(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
            b[i] -= m * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * b[j];
        b[k] = s / a(k, k);
    }
    return true;
}

namespace {

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) return INFINITY;
        m = std::max(m, std::fabs(x));
    }
    return m;
}

}  // namespace

RefinementResult newton_raphson(const Problem& problem, std::span<const double> x0, const NewtonOptions& options) {
    const std::size_t n = problem.dimension();
    if (x0.size() != n) throw DimensionError("initial point has wrong dimension");

    RefinementResult result;
    result.start.assign(x0.begin(), x0.end());
    Point x = result.start;
    std::vector<double> fx = problem.evaluate(x);
    std::vector<double> step(n);

    auto finish = [&](NewtonStatus status) {
        result.status = status;
        result.residual_norm = max_norm(fx);
        if (status == NewtonStatus::converged) result.root = x;
        return result;
    };

    if (max_norm(x) > options.divergence_bound) return finish(NewtonStatus::diverged);

    for (;;) {
        const double residual = max_norm(fx);
        if (!std::isfinite(residual)) return finish(NewtonStatus::diverged);
        if (residual <= options.residual_tol) return finish(NewtonStatus::converged);
        if (result.iterations >= options.max_iterations) return finish(NewtonStatus::non_converged);

        SquareMatrix J = options.jacobian == JacobianKind::analytic ? problem.analytic_jacobian(x)
                                                                    : numeric_jacobian(problem, x);
        std::copy(fx.begin(), fx.end(), step.begin());
        if (!lu_solve(std::move(J), step)) return finish(NewtonStatus::singular_jacobian);

        for (std::size_t i = 0; i < n; ++i) x[i] -= step[i];
        ++result.iterations;
        if (max_norm(x) > options.divergence_bound) return finish(NewtonStatus::diverged);
        problem.evaluate(x, fx);

        if (max_norm(step) <= options.step_tol) {
            // stagnated: accept only if the residual test also holds
            const double r = max_norm(fx);
            return finish(std::isfinite(r) && r <= options.residual_tol ? NewtonStatus::converged
                                                                        : NewtonStatus::non_converged);
        }
    }
}

Point rounded_key(std::span<const double> x, int decimals) {
    if (decimals < 0) throw std::invalid_argument("round_decimals must be non-negative");
    const double scale = std::pow(10.0, decimals);
    Point key(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = std::round(x[i] * scale) / scale;
        key[i] = r == 0.0 ? 0.0 : r;
    }
    return key;
}

std::vector<Solution> dedupe(std::span<const Solution> solutions, int round_decimals) {
    std::vector<Solution> out;
    std::map<Point, std::size_t> seen;
    for (const auto& s : solutions) {
        Point key = rounded_key(s.coordinates, round_decimals);
        if (!seen.emplace(key, out.size()).second) continue;
        Solution kept = s;
        kept.key = std::move(key);
        out.push_back(std::move(kept));
    }
    return out;
}

std::vector<Solution> dedupe(std::span<const RefinementResult> results, int round_decimals) {
    std::vector<Solution> converged;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.converged()) continue;
        converged.push_back({r.root, {}, r.residual_norm, r.iterations, i});
    }
    return dedupe(std::span<const Solution>(converged), round_decimals);
}

std::vector<Solution> domain_filter(std::span<const Solution> solutions, const DomainGrid& grid,
                                    std::optional<double> slack) {
    if (slack && !(*slack >= 0.0)) throw std::invalid_argument("domain slack must be non-negative");
    std::vector<Solution> out;
    for (const auto& s : solutions) {
        if (s.coordinates.size() != grid.dimension()) throw DimensionError("solution dimension does not match grid");
        bool inside = true;
        for (std::size_t k = 0; k < grid.dimension() && inside; ++k) {
            const auto& axis = grid.axis(k);
            const double tol = slack ? *slack : 1e-9 * (axis.upper - axis.lower);
            inside = s.coordinates[k] >= axis.lower - tol && s.coordinates[k] <= axis.upper + tol;
        }
        if (inside) out.push_back(s);
    }
    return out;
}

}  // namespace allroots
