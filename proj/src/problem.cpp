#include "allroots/problem.hpp"

#include <cmath>

namespace allroots {

Problem::Problem(VariableSet vars, std::vector<Expression> functions, std::optional<JacobianExpressions> jacobian,
                 std::string label)
    : vars_(std::move(vars)), functions_(std::move(functions)), jacobian_(std::move(jacobian)), label_(std::move(label)) {
    const std::size_t n = vars_.size();
    if (n == 0) throw DimensionError("problem needs at least one variable");
    if (functions_.size() != n)
        throw DimensionError("equation/variable count mismatch: " + std::to_string(functions_.size()) +
                             " equations, " + std::to_string(n) + " variables");
    for (const auto& f : functions_)
        if (f.variable_count() != n) throw DimensionError("expression parsed over a different variable set");
    if (jacobian_) {
        if (jacobian_->size() != n) throw DimensionError("analytic Jacobian must have n rows");
        for (const auto& row : *jacobian_)
            if (row.size() != n) throw DimensionError("analytic Jacobian must have n columns");
    }
}

Problem Problem::from_text(const std::vector<std::string>& variables, const std::vector<std::string>& equations,
                           const std::optional<std::vector<std::vector<std::string>>>& jacobian, std::string label) {
    VariableSet vars(variables);
    if (equations.size() != vars.size())
        throw DimensionError("equation/variable count mismatch: " + std::to_string(equations.size()) +
                             " equations, " + std::to_string(vars.size()) + " variables");
    std::vector<Expression> functions;
    functions.reserve(equations.size());
    for (const auto& text : equations) functions.push_back(parse(text, vars));

    std::optional<JacobianExpressions> jac;
    if (jacobian) {
        jac.emplace();
        for (const auto& row : *jacobian) {
            auto& parsed = jac->emplace_back();
            for (const auto& text : row) parsed.push_back(parse(text, vars));
        }
    }
    return Problem(std::move(vars), std::move(functions), std::move(jac), std::move(label));
}

void Problem::evaluate(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < functions_.size(); ++i) out[i] = functions_[i].evaluate(x);
}

std::vector<double> Problem::evaluate(std::span<const double> x) const {
    std::vector<double> out(functions_.size());
    evaluate(x, out);
    return out;
}

SquareMatrix Problem::analytic_jacobian(std::span<const double> x) const {
    if (!jacobian_) throw std::logic_error("problem '" + label_ + "' has no analytic Jacobian");
    SquareMatrix J(dimension());
    for (std::size_t i = 0; i < J.n; ++i)
        for (std::size_t j = 0; j < J.n; ++j) J(i, j) = (*jacobian_)[i][j].evaluate(x);
    return J;
}

double residual_norm(const Problem& problem, std::span<const double> x) {
    double norm = 0.0;
    for (const auto& f : problem.functions()) {
        double v = f.evaluate(x);
        if (!std::isfinite(v)) return INFINITY;
        norm = std::max(norm, std::fabs(v));
    }
    return norm;
}

}  // namespace allroots
