#pragma once

#include "allroots/expr.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace allroots {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major n x n matrix.
struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t size) : n(size), values(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

/// A square system F(x) = 0: n expressions over n variables, optionally with
/// an analytic Jacobian given as an n x n grid of expressions (row i holds the
/// partials of f_i).
class Problem {
public:
    using JacobianExpressions = std::vector<std::vector<Expression>>;

    Problem(VariableSet vars, std::vector<Expression> functions, std::optional<JacobianExpressions> jacobian = {},
            std::string label = {});

    /// Parses every equation (and Jacobian entry) over `variables`.
    static Problem from_text(const std::vector<std::string>& variables, const std::vector<std::string>& equations,
                             const std::optional<std::vector<std::vector<std::string>>>& jacobian = {},
                             std::string label = {});

    std::size_t dimension() const { return functions_.size(); }
    const VariableSet& variables() const { return vars_; }
    const std::vector<Expression>& functions() const { return functions_; }
    const std::string& label() const { return label_; }
    bool has_analytic_jacobian() const { return jacobian_.has_value(); }
    const std::optional<JacobianExpressions>& jacobian_expressions() const { return jacobian_; }

    /// out[i] = f_i(x).
    void evaluate(std::span<const double> x, std::span<double> out) const;
    std::vector<double> evaluate(std::span<const double> x) const;

    /// Throws std::logic_error when the problem carries no analytic Jacobian.
    SquareMatrix analytic_jacobian(std::span<const double> x) const;

private:
    VariableSet vars_;
    std::vector<Expression> functions_;
    std::optional<JacobianExpressions> jacobian_;
    std::string label_;
};

/// Max-norm of F(x); NaN propagates as +inf.
double residual_norm(const Problem& problem, std::span<const double> x);

}  // namespace allroots
