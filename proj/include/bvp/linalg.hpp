#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvp {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::vector<double> multiply(const std::vector<double>& x) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Thrown when LU factorization meets a pivot below the singularity tolerance.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& msg, double condition_estimate)
        : std::runtime_error(msg), condition_estimate_(condition_estimate) {}

    double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// LU factorization with partial pivoting of a square matrix.
///
/// A pivot of magnitude below eps * (1-norm of the original pivot row)
/// is treated as an exact zero and raises SingularMatrixError.
class LuFactors {
public:
    static LuFactors factor(Matrix a);

    std::vector<double> solve(std::vector<double> b) const;
    std::vector<double> solve_transposed(std::vector<double> b) const;

    /// 1-norm condition estimate: ||A||_1 times a Hager-style power-method
    /// estimate of ||A^-1||_1 computed from the factors.
    double condition_estimate() const;

    std::size_t dim() const { return lu_.rows(); }

private:
    LuFactors() = default;

    Matrix lu_;
    std::vector<std::size_t> pivots_;
    double norm1_ = 0.0;
};

}  // namespace bvp
