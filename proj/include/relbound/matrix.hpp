#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "relbound/errors.hpp"

namespace relbound {

using cxd = std::complex<double>;

/// Dense complex matrix, column-major storage.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cxd(0.0, 0.0)) {}

  static Matrix identity(std::size_t n);
  /// Square matrix with the given values on the diagonal.
  static Matrix diagonal(const std::vector<double>& values);
  static Matrix diagonal(const std::vector<cxd>& values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  cxd& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const cxd& operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }

  cxd* data() { return data_.data(); }
  const cxd* data() const { return data_.data(); }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cxd scalar);
  Matrix& operator*=(double scalar);

  /// Columns [0, k) as an rows x k matrix.
  Matrix leading_columns(std::size_t k) const;
  /// Columns [k, cols) as an rows x (cols-k) matrix.
  Matrix trailing_columns(std::size_t k) const;
  std::vector<cxd> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<cxd>& v);

  bool all_finite() const;

 private:
  std::size_t rows_, cols_;
  std::vector<cxd> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cxd scalar, Matrix m);
Matrix operator*(double scalar, Matrix m);

/// Conjugate transpose.
Matrix adjoint(const Matrix& m);
Matrix transpose(const Matrix& m);

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);

/// True when ||M - M*|| is within tol * ||M|| (Frobenius).
bool is_hermitian(const Matrix& m, double tol);

/// Complex square matrix constrained to equal its conjugate transpose.
/// Construction symmetrizes as (M + M*)/2 so the stored form is exact.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m, double herm_tol = 1e-12);

  std::size_t size() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

  const cxd& operator()(std::size_t i, std::size_t j) const {
    return mat_(i, j);
  }

 private:
  Matrix mat_;
};

}  // namespace relbound
