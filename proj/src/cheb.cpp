#include "bvp/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bvp {

namespace {

// Affine image of t in [-1, 1], clamped when t is within a few machine
// epsilons of an endpoint (collocation nodes computed in floating point can
// land epsilon-outside).
double unit_coordinate(double t, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval endpoints must satisfy a < b");
    const double slack =
        8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
    if (t < a - slack || t > b + slack)
        throw std::domain_error("t=" + std::to_string(t) + " outside [" + std::to_string(a) +
                                ", " + std::to_string(b) + "]");
    const double tc = std::clamp(t, a, b);
    return std::clamp((2.0 * tc - a - b) / (b - a), -1.0, 1.0);
}

}  // namespace

std::vector<double> cheb_nodes(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("cheb_nodes: n must be >= 1");
    if (!(a < b)) throw std::invalid_argument("cheb_nodes: endpoints must satisfy a < b");
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Fill one half and mirror so the set is exactly symmetric with exact endpoints.
    t[0] = b;
    t[static_cast<std::size_t>(n)] = a;
    for (int j = 1; 2 * j < n; ++j) {
        const double x = std::cos(j * std::numbers::pi / n);
        t[static_cast<std::size_t>(j)] = mid + half * x;
        t[static_cast<std::size_t>(n - j)] = mid - half * x;
    }
    if (n % 2 == 0 && n >= 2) t[static_cast<std::size_t>(n / 2)] = mid;
    return t;
}

double eval_T(int r, double t, double a, double b) {
    if (r < 0) throw std::invalid_argument("eval_T: r must be >= 0");
    const double x = unit_coordinate(t, a, b);
    if (r == 0) return 1.0;
    double tm2 = 1.0, tm1 = x;
    for (int k = 2; k <= r; ++k) {
        const double tk = 2.0 * x * tm1 - tm2;
        tm2 = tm1;
        tm1 = tk;
    }
    return tm1;
}

std::vector<double> basis_row(int n, double t, double a, double b) {
    if (n < 0) throw std::invalid_argument("basis_row: n must be >= 0");
    const double x = unit_coordinate(t, a, b);
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1.0;
    if (n >= 1) row[1] = x;
    for (int r = 2; r <= n; ++r)
        row[static_cast<std::size_t>(r)] =
            2.0 * x * row[static_cast<std::size_t>(r - 1)] - row[static_cast<std::size_t>(r - 2)];
    return row;
}

DerivCoeffOperator deriv_operator(int n) {
    if (n < 1) throw std::invalid_argument("deriv_operator: n must be >= 1");
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    DerivCoeffOperator op{n, Matrix(dim, dim)};
    for (std::size_t j = 1; j < dim; j += 2) op.entries(0, j) = static_cast<double>(j) / 2.0;
    for (std::size_t r = 1; r < dim; ++r)
        for (std::size_t j = r + 1; j < dim; ++j)
            if ((j - r) % 2 == 1) op.entries(r, j) = static_cast<double>(j);
    return op;
}

ChebSeries derivative_coeffs(const ChebSeries& s, int k) {
    if (k < 0) throw std::invalid_argument("derivative_coeffs: k must be >= 0");
    if (s.coeffs.empty()) throw std::invalid_argument("derivative_coeffs: empty series");
    if (k == 0 || s.coeffs.size() == 1) {
        ChebSeries out = s;
        if (k > 0) std::fill(out.coeffs.begin(), out.coeffs.end(), 0.0);
        return out;
    }
    const DerivCoeffOperator op = deriv_operator(s.degree());
    const double scale = 4.0 / (s.b - s.a);
    ChebSeries out = s;
    for (int i = 0; i < k; ++i) {
        out.coeffs = op.entries.multiply(out.coeffs);
        for (double& c : out.coeffs) c *= scale;
    }
    return out;
}

double clenshaw_eval(const ChebSeries& s, double t) {
    if (s.coeffs.empty()) throw std::invalid_argument("clenshaw_eval: empty series");
    const double x = unit_coordinate(t, s.a, s.b);
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t r = s.coeffs.size() - 1; r >= 1; --r) {
        const double bk = 2.0 * x * b1 - b2 + s.coeffs[r];
        b2 = b1;
        b1 = bk;
    }
    return x * b1 - b2 + s.coeffs[0];
}

}  // namespace bvp
