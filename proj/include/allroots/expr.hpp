#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace allroots {

/// Ordered, duplicate-free list of variable names. Order defines x_1..x_n.
class VariableSet {
public:
    VariableSet() = default;
    explicit VariableSet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& operator[](std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    /// Index of `name`, or size() when absent.
    std::size_t find(std::string_view name) const;

    bool operator==(const VariableSet&) const = default;

private:
    std::vector<std::string> names_;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, unknown_identifier, arity };

    ParseError(Kind kind, std::size_t position, std::string message, std::string identifier = {});

    Kind kind() const { return kind_; }
    /// 0-based character offset into the source text.
    std::size_t position() const { return position_; }
    /// Offending identifier for unknown_identifier/arity errors.
    const std::string& identifier() const { return identifier_; }

private:
    Kind kind_;
    std::size_t position_;
    std::string identifier_;
};

enum class Function { sin, cos, tan, asin, acos, atan, exp, log, sqrt, abs };

/// Immutable parsed scalar expression.
///
/// Nodes live in a flat arena in post-order (children precede parents), the
/// root is the last node. Evaluation never throws: IEEE semantics apply, so
/// 1/0 is +inf and log(-1) is NaN.
class Expression {
public:
    enum class Kind { constant, variable, negate, add, subtract, multiply, divide, power, call };

    struct Node {
        Kind kind;
        double value = 0.0;       // constant
        std::size_t index = 0;    // variable slot or Function id
        std::size_t lhs = 0;      // operand (unary) or left operand
        std::size_t rhs = 0;
    };

    double evaluate(std::span<const double> point) const;

    std::size_t variable_count() const { return variable_count_; }
    const std::string& source() const { return source_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    /// Fully parenthesized infix text that parses back to the same tree.
    std::string canonical() const;

    /// Structural tree equality; ignores source text.
    bool same_structure(const Expression& other) const;

private:
    friend class Parser;
    Expression() = default;

    double eval_node(std::size_t i, std::span<const double> point) const;
    void write_node(std::string& out, std::size_t i) const;
    bool same_node(std::size_t i, const Expression& other, std::size_t j) const;

    std::vector<Node> nodes_;
    std::vector<std::string> variable_names_;
    std::size_t variable_count_ = 0;
    std::string source_;
};

/// Parses `source` over `vars`.
///
/// Grammar: numeric literals (decimal, scientific), variables, + - * / ^
/// (right-associative ^, binding tighter than unary minus), parentheses,
/// sin cos tan asin acos atan exp log sqrt abs, constants pi and e.
/// A leading MATLAB-style "@(x1,x2)" header is stripped, and ".*", "./",
/// ".^" are accepted as aliases. No implicit multiplication.
Expression parse(std::string_view source, const VariableSet& vars);

}  // namespace allroots
