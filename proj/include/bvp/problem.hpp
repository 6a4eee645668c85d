#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bvp/expr.hpp"

namespace bvp {

enum class Endpoint { Left, Right };

/// y^(k)(endpoint) = value, with 0 <= k <= m-1.
struct BoundaryCondition {
    int deriv_order;
    Endpoint endpoint;
    double value;

    bool operator==(const BoundaryCondition&) const = default;
};

class ProblemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An m-th order linear two-point BVP
///   y^(m) + a_1(t) y^(m-1) + ... + a_m(t) y = f(t)  on (a, b)
/// with m endpoint boundary conditions.
struct Problem {
    int order = 0;
    double a = 0.0;
    double b = 0.0;
    std::vector<Expr> coeffs;  // a_1 .. a_m; a_i multiplies y^(m-i)
    Expr rhs;
    std::vector<BoundaryCondition> bcs;
    std::optional<Expr> exact;
    std::optional<int> default_degree;
    std::string label;

    /// Throws ProblemError on any invariant violation.
    void validate() const;
};

/// Parse the line-oriented problem-file format:
///
///   order = <positive int>
///   interval = [<real>, <real>]
///   coeff <i> = <expr in t>       # optional per i; default 0
///   rhs = <expr in t>
///   bc: <D<k>|y|y'|y''>(<bound>) = <const expr>   # exactly `order` lines
///   exact = <expr in t>           # optional
///   n = <int>                     # optional default degree
///   label = <text>                # optional
///
/// '#' starts a comment. Errors carry the 1-based line number.
Problem parse_problem(std::string_view src);

}  // namespace bvp
