#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace ris::numerics {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& v);

/// Solves A X = B with partially pivoted LU. A must be square, B conformable.
/// Throws SingularMatrix when a pivot falls below 1e-14 times the largest
/// initial entry magnitude.
ComplexMatrix lu_solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector lu_solve(const ComplexMatrix& a, const ComplexVector& b);

ComplexMatrix invert(const ComplexMatrix& a);

/// Largest singular value via power iteration on A^H A. Deterministic
/// all-ones start, relative tolerance 1e-6, at most 500 iterations. When the
/// iteration does not settle the best estimate is returned and *converged
/// (if given) is set to false.
double spectral_norm(const ComplexMatrix& a, bool* converged = nullptr);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points mapped to [lo, hi].
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

/// Wraps an angle to [-pi, pi).
double wrap_to_pi(double angle);

}  // namespace ris::numerics
