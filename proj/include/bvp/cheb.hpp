#pragma once

#include <vector>

#include "bvp/linalg.hpp"

namespace bvp {

/// Truncated Chebyshev series sum_j coeffs[j] * T_j*(t) on [a, b].
struct ChebSeries {
    std::vector<double> coeffs;  // C_0 .. C_n
    double a = -1.0;
    double b = 1.0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Chebyshev extreme points translated to [a, b], numbered right to left:
/// t_j = (a+b)/2 + ((b-a)/2) cos(j pi / n), so t_0 = b and t_n = a exactly.
/// Returns n+1 strictly decreasing values, symmetric about the midpoint.
std::vector<double> cheb_nodes(int n, double a, double b);

/// Translated Chebyshev polynomial T_r*(t) on [a, b], computed by the
/// three-term recurrence on the affine image x = (2t-a-b)/(b-a).
/// t may overshoot an endpoint by a few machine epsilons (it is clamped);
/// anything farther out is a domain error.
double eval_T(int r, double t, double a, double b);

/// Row vector [T_0*(t), ..., T_n*(t)] in one recurrence sweep.
std::vector<double> basis_row(int n, double t, double a, double b);

/// The strictly upper-triangular operator relating Chebyshev coefficients to
/// (half of) the coefficients of the derivative: for a series c on [-1, 1],
/// 2 * entries * c gives the derivative's coefficients.
///
/// Entry rule: row 0, column j holds j/2 for odd j; row r >= 1, column j
/// holds j when j > r and j - r is odd; all other entries are zero.
struct DerivCoeffOperator {
    int n = 0;
    Matrix entries;  // (n+1) x (n+1)
};

DerivCoeffOperator deriv_operator(int n);

/// Series of the k-th derivative on the same interval:
/// coeffs = (4/(b-a))^k * M^k * coeffs(s).
ChebSeries derivative_coeffs(const ChebSeries& s, int k);

/// Stable series evaluation by the Clenshaw backward recurrence.
double clenshaw_eval(const ChebSeries& s, double t);

}  // namespace bvp
