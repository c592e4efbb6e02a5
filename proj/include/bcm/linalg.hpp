#pragma once

// Small dense matrices and LU with partial pivoting. Everything here is sized
// for desk-scale problems (a few hundred rows at most).

#include <cstddef>
#include <span>
#include <vector>

namespace bcm {

/// Row-major dense matrix, 0-based.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  /// Top-left n x n block.
  Matrix leading_block(std::size_t n) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);

/// PA = LU with unit-lower L stored below the diagonal.
struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  /// A pivot fell at or below rel_tol * max|A|.
  bool singular = false;

  double determinant() const;
  /// Solves A x = rhs. Undefined when singular.
  std::vector<double> solve(std::span<const double> rhs) const;
};

LuFactors lu_factor(Matrix a, double rel_tol = 1e-14);

}  // namespace bcm
