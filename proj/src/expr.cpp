#include "allroots/expr.hpp"

#include "allroots/format.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <system_error>
#include <unordered_set>

namespace allroots {

namespace {

constexpr std::array<std::string_view, 10> kFunctionNames = {
    "sin", "cos", "tan", "asin", "acos", "atan", "exp", "log", "sqrt", "abs"};

std::optional<Function> lookup_function(std::string_view name) {
    for (std::size_t i = 0; i < kFunctionNames.size(); ++i)
        if (kFunctionNames[i] == name) return static_cast<Function>(i);
    return std::nullopt;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool valid_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s.front())) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return true;
}

double apply(Function f, double x) {
    switch (f) {
        case Function::sin: return std::sin(x);
        case Function::cos: return std::cos(x);
        case Function::tan: return std::tan(x);
        case Function::asin: return std::asin(x);
        case Function::acos: return std::acos(x);
        case Function::atan: return std::atan(x);
        case Function::exp: return std::exp(x);
        case Function::log: return std::log(x);
        case Function::sqrt: return std::sqrt(x);
        case Function::abs: return std::fabs(x);
    }
    return std::nan("");
}

}  // namespace

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
        if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
        if (lookup_function(name)) throw std::invalid_argument("variable name '" + name + "' is a function name");
        if (!seen.insert(name).second) throw std::invalid_argument("duplicate variable name '" + name + "'");
    }
}

std::size_t VariableSet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return names_.size();
}

ParseError::ParseError(Kind kind, std::size_t position, std::string message, std::string identifier)
    : std::runtime_error(std::move(message)), kind_(kind), position_(position), identifier_(std::move(identifier)) {}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view text, std::size_t offset, const VariableSet& vars)
        : text_(text), offset_(offset), vars_(vars) {}

    Expression run(std::string source) {
        expr_.source_ = std::move(source);
        expr_.variable_count_ = vars_.size();
        expr_.variable_names_ = vars_.names();
        skip_space();
        if (pos_ == text_.size()) syntax("empty expression");
        parse_sum();
        skip_space();
        if (pos_ != text_.size()) syntax("unexpected '" + std::string(1, text_[pos_]) + "'");
        return std::move(expr_);
    }

private:
    using Kind = Expression::Kind;

    [[noreturn]] void syntax(const std::string& what) const { syntax_at(pos_, what); }

    [[noreturn]] void syntax_at(std::size_t at, const std::string& what) const {
        std::size_t p = offset_ + at;
        throw ParseError(ParseError::Kind::syntax, p, "syntax error at position " + std::to_string(p) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // Consumes `op` or its MATLAB elementwise alias ".op".
    bool accept_operator(char op) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == op) {
            ++pos_;
            return true;
        }
        if (op != '+' && op != '-' && pos_ + 1 < text_.size() && text_[pos_] == '.' && text_[pos_ + 1] == op) {
            pos_ += 2;
            return true;
        }
        return false;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::size_t push(Expression::Node node) {
        expr_.nodes_.push_back(node);
        return expr_.nodes_.size() - 1;
    }

    std::size_t push_binary(Kind kind, std::size_t lhs, std::size_t rhs) {
        return push({.kind = kind, .lhs = lhs, .rhs = rhs});
    }

    std::size_t parse_sum() {
        std::size_t lhs = parse_product();
        for (;;) {
            if (accept_operator('+'))
                lhs = push_binary(Kind::add, lhs, parse_product());
            else if (accept_operator('-'))
                lhs = push_binary(Kind::subtract, lhs, parse_product());
            else
                return lhs;
        }
    }

    std::size_t parse_product() {
        std::size_t lhs = parse_unary();
        for (;;) {
            if (accept_operator('*'))
                lhs = push_binary(Kind::multiply, lhs, parse_unary());
            else if (accept_operator('/'))
                lhs = push_binary(Kind::divide, lhs, parse_unary());
            else
                return lhs;
        }
    }

    std::size_t parse_unary() {
        if (accept('-')) {
            std::size_t operand = parse_unary();
            return push({.kind = Kind::negate, .lhs = operand});
        }
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    std::size_t parse_power() {
        std::size_t base = parse_primary();
        if (accept_operator('^')) {
            // right operand may carry its own sign: 2^-1
            std::size_t exponent = parse_unary();
            return push_binary(Kind::power, base, exponent);
        }
        return base;
    }

    std::size_t parse_primary() {
        skip_space();
        if (pos_ == text_.size()) syntax("expected expression, found end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            std::size_t inner = parse_sum();
            if (!accept(')')) syntax(pos_ == text_.size() ? "expected ')', found end of input" : "expected ')'");
            return inner;
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) return parse_number();
        if (is_ident_start(c)) return parse_identifier();
        syntax("unexpected '" + std::string(1, c) + "'");
    }

    std::size_t parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        // A '.' directly followed by an operator is the MATLAB elementwise alias, not a decimal point.
        if (pos_ < text_.size() && text_[pos_] == '.' &&
            !(pos_ + 1 < text_.size() && (text_[pos_ + 1] == '*' || text_[pos_ + 1] == '/' || text_[pos_ + 1] == '^'))) {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ == text_.size() || !is_digit(text_[pos_])) syntax_at(mark, "malformed exponent in numeric literal");
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
        if (pos_ < text_.size() && is_ident_start(text_[pos_]))
            syntax("unexpected '" + std::string(1, text_[pos_]) + "' after number (no implicit multiplication)");
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_)
            syntax_at(start, "numeric literal out of range");
        return push({.kind = Kind::constant, .value = value});
    }

    std::size_t parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        std::size_t at = offset_ + start;

        skip_space();
        bool is_call = pos_ < text_.size() && text_[pos_] == '(';
        if (is_call) {
            auto fn = lookup_function(name);
            if (!fn)
                throw ParseError(ParseError::Kind::unknown_identifier, at,
                                 "unknown function '" + name + "' at position " + std::to_string(at), name);
            ++pos_;
            skip_space();
            if (accept(')'))
                throw ParseError(ParseError::Kind::arity, at, "function '" + name + "' expects 1 argument, got 0", name);
            std::size_t arg = parse_sum();
            std::size_t count = 1;
            while (accept(',')) {
                parse_sum();
                ++count;
            }
            if (!accept(')')) syntax(pos_ == text_.size() ? "expected ')', found end of input" : "expected ')'");
            if (count != 1)
                throw ParseError(ParseError::Kind::arity, at,
                                 "function '" + name + "' expects 1 argument, got " + std::to_string(count), name);
            return push({.kind = Kind::call, .index = static_cast<std::size_t>(*fn), .lhs = arg});
        }

        if (std::size_t slot = vars_.find(name); slot < vars_.size())
            return push({.kind = Kind::variable, .index = slot});
        if (name == "pi") return push({.kind = Kind::constant, .value = std::numbers::pi});
        if (name == "e") return push({.kind = Kind::constant, .value = std::numbers::e});
        if (lookup_function(name))
            throw ParseError(ParseError::Kind::arity, at, "function '" + name + "' used without an argument", name);
        throw ParseError(ParseError::Kind::unknown_identifier, at,
                         "unknown identifier '" + name + "' at position " + std::to_string(at), name);
    }

    std::string_view text_;
    std::size_t offset_;
    const VariableSet& vars_;
    std::size_t pos_ = 0;
    Expression expr_;
};

Expression parse(std::string_view source, const VariableSet& vars) {
    std::size_t offset = 0;
    while (offset < source.size() && std::isspace(static_cast<unsigned char>(source[offset]))) ++offset;
    if (offset < source.size() && source[offset] == '@') {
        std::size_t close = source.find(')', offset);
        if (offset + 1 >= source.size() || source[offset + 1] != '(' || close == std::string_view::npos)
            throw ParseError(ParseError::Kind::syntax, offset,
                             "syntax error at position " + std::to_string(offset) + ": malformed '@(...)' header");
        offset = close + 1;
    }
    Parser parser(source.substr(offset), offset, vars);
    return parser.run(std::string(source));
}

// ---------------------------------------------------------------------------
// Evaluation and serialization

double Expression::evaluate(std::span<const double> point) const {
    return eval_node(nodes_.size() - 1, point);
}

double Expression::eval_node(std::size_t i, std::span<const double> point) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
        case Kind::constant: return n.value;
        case Kind::variable: return point[n.index];
        case Kind::negate: return -eval_node(n.lhs, point);
        case Kind::add: return eval_node(n.lhs, point) + eval_node(n.rhs, point);
        case Kind::subtract: return eval_node(n.lhs, point) - eval_node(n.rhs, point);
        case Kind::multiply: return eval_node(n.lhs, point) * eval_node(n.rhs, point);
        case Kind::divide: return eval_node(n.lhs, point) / eval_node(n.rhs, point);
        case Kind::power: {
            double base = eval_node(n.lhs, point);
            double exponent = eval_node(n.rhs, point);
            if (exponent == 2.0) return base * base;
            return std::pow(base, exponent);
        }
        case Kind::call: return apply(static_cast<Function>(n.index), eval_node(n.lhs, point));
    }
    return std::nan("");
}

std::string Expression::canonical() const {
    std::string out;
    write_node(out, nodes_.size() - 1);
    return out;
}

void Expression::write_node(std::string& out, std::size_t i) const {
    const Node& n = nodes_[i];
    auto binary = [&](char op) {
        out += '(';
        write_node(out, n.lhs);
        out += op;
        write_node(out, n.rhs);
        out += ')';
    };
    switch (n.kind) {
        case Kind::constant: out += format_double(n.value); break;
        case Kind::variable: out += variable_names_[n.index]; break;
        case Kind::negate:
            out += "(-";
            write_node(out, n.lhs);
            out += ')';
            break;
        case Kind::add: binary('+'); break;
        case Kind::subtract: binary('-'); break;
        case Kind::multiply: binary('*'); break;
        case Kind::divide: binary('/'); break;
        case Kind::power: binary('^'); break;
        case Kind::call:
            out += kFunctionNames[n.index];
            out += '(';
            write_node(out, n.lhs);
            out += ')';
            break;
    }
}

bool Expression::same_structure(const Expression& other) const {
    if (nodes_.empty() || other.nodes_.empty()) return nodes_.empty() == other.nodes_.empty();
    return same_node(nodes_.size() - 1, other, other.nodes_.size() - 1);
}

bool Expression::same_node(std::size_t i, const Expression& other, std::size_t j) const {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[j];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::constant: return a.value == b.value;
        case Kind::variable:
        case Kind::call:
            if (a.index != b.index) return false;
            return a.kind == Kind::variable || same_node(a.lhs, other, b.lhs);
        case Kind::negate: return same_node(a.lhs, other, b.lhs);
        default: return same_node(a.lhs, other, b.lhs) && same_node(a.rhs, other, b.rhs);
    }
}

}  // namespace allroots
