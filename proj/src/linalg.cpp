#include "bvp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace bvp {

std::vector<double> Matrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        const double* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

LuFactors LuFactors::factor(Matrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("LuFactors: matrix must be square");

    constexpr double eps = std::numeric_limits<double>::epsilon();

    // Original row 1-norms, tracked through row swaps; also the matrix 1-norm.
    std::vector<double> row_norm(n, 0.0);
    double norm1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
        norm1 = std::max(norm1, col);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) row_norm[i] += std::abs(a(i, j));

    LuFactors f;
    f.pivots_.resize(n);
    f.norm1_ = norm1;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        f.pivots_[k] = p;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(row_norm[k], row_norm[p]);
        }
        const double pivot = a(k, k);
        if (std::abs(pivot) < eps * row_norm[k] || row_norm[k] == 0.0) {
            throw SingularMatrixError(
                "singular system: zero pivot at elimination step " + std::to_string(k),
                std::numeric_limits<double>::infinity());
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = a(i, k) / pivot;
            a(i, k) = l;
            if (l != 0.0)
                for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    f.lu_ = std::move(a);
    return f;
}

std::vector<double> LuFactors::solve(std::vector<double> b) const {
    const std::size_t n = dim();
    for (std::size_t k = 0; k < n; ++k)
        if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
    for (std::size_t i = 1; i < n; ++i) {
        double acc = b[i];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * b[j];
        b[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_(ii, j) * b[j];
        b[ii] = acc / lu_(ii, ii);
    }
    return b;
}

std::vector<double> LuFactors::solve_transposed(std::vector<double> b) const {
    // PA = LU, so A^T x = b is solved via U^T w = b, L^T v = w, x = P^T v.
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = b[i];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(j, i) * b[j];
        b[i] = acc / lu_(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_(j, ii) * b[j];
        b[ii] = acc;
    }
    for (std::size_t kk = n; kk-- > 0;)
        if (pivots_[kk] != kk) std::swap(b[kk], b[pivots_[kk]]);
    return b;
}

double LuFactors::condition_estimate() const {
    const std::size_t n = dim();
    if (n == 0) return 0.0;

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double inv_norm = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<double> v = solve(x);
        double gamma = 0.0;
        for (double vi : v) gamma += std::abs(vi);
        inv_norm = std::max(inv_norm, gamma);

        std::vector<double> xi(n);
        for (std::size_t i = 0; i < n; ++i) xi[i] = (v[i] >= 0.0) ? 1.0 : -1.0;
        std::vector<double> z = solve_transposed(std::move(xi));

        std::size_t jmax = 0;
        double zmax = 0.0, zdotx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            zdotx += z[i] * x[i];
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                jmax = i;
            }
        }
        if (iter > 0 && zmax <= zdotx) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[jmax] = 1.0;
    }
    return norm1_ * inv_norm;
}

}  // namespace bvp
