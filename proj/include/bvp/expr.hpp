#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bvp {

/// Parse failure, carrying the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Domain fault during evaluation (log of a non-positive value, division by
/// zero, cot at a multiple of pi, ...). Carries the offending sub-expression
/// and the evaluation point.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& msg, const std::string& subexpr, double t)
        : std::runtime_error(msg + " in '" + subexpr + "' at t=" + std::to_string(t)),
          subexpr_(subexpr), t_(t) {}

    const std::string& subexpr() const { return subexpr_; }
    double t() const { return t_; }

private:
    std::string subexpr_;
    double t_;
};

/// Immutable expression tree for real-valued functions of t.
///
/// Grammar: literals, constants pi and e, the variable t, unary negation,
/// binary + - * / ^ (^ right-associative, binding tighter than unary minus),
/// and calls of sin, cos, tan, cot, exp, log, sqrt, abs.
class Expr {
public:
    Expr() = default;

    static Expr number(double value);
    static Expr pi();
    static Expr euler();
    static Expr variable();
    static Expr negate(Expr operand);
    static Expr binary(char op, Expr lhs, Expr rhs);  // op in "+-*/^"
    static Expr call(std::string_view fn, Expr arg);

    bool is_null() const { return node_ == nullptr; }

    double eval(double t) const;
    bool depends_on_t() const;
    std::string to_string() const;

    /// Structural equality.
    bool operator==(const Expr& other) const;

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

Expr parse_expr(std::string_view src);

}  // namespace bvp
