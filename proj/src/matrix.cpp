#include "relbound/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relbound {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::diagonal(const std::vector<cxd>& values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

namespace {
void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "shape mismatch: " << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols();
    fail(ErrorCode::DimensionMismatch, os.str());
  }
}
}  // namespace

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(cxd scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

Matrix& Matrix::operator*=(double scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

Matrix Matrix::leading_columns(std::size_t k) const {
  Matrix out(rows_, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, j);
  return out;
}

Matrix Matrix::trailing_columns(std::size_t k) const {
  Matrix out(rows_, cols_ - k);
  for (std::size_t j = k; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out(i, j - k) = (*this)(i, j);
  return out;
}

std::vector<cxd> Matrix::column(std::size_t j) const {
  std::vector<cxd> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const std::vector<cxd>& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::all_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows())
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const cxd b = rhs(k, j);
      if (b == cxd(0.0, 0.0)) continue;
      for (std::size_t i = 0; i < lhs.rows(); ++i) out(i, j) += lhs(i, k) * b;
    }
  }
  return out;
}

Matrix operator*(cxd scalar, Matrix m) { return m *= scalar; }
Matrix operator*(double scalar, Matrix m) { return m *= scalar; }

Matrix adjoint(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = std::conj(m(i, j));
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = m(i, j);
  return out;
}

double frobenius_norm(const Matrix& m) {
  double sum = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      best = std::max(best, std::abs(m(i, j)));
  return best;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  double scale = frobenius_norm(m);
  return frobenius_norm(m - adjoint(m)) <= tol * std::max(scale, 1.0);
}

HermitianMatrix::HermitianMatrix(const Matrix& m, double herm_tol) {
  if (!m.is_square())
    fail(ErrorCode::DimensionMismatch, "Hermitian matrix must be square");
  if (!m.all_finite())
    fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  if (!is_hermitian(m, herm_tol))
    fail(ErrorCode::SymmetryViolation,
         "matrix is not Hermitian within tolerance");
  const std::size_t n = m.rows();
  mat_ = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      cxd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      if (i == j) v = cxd(v.real(), 0.0);
      mat_(i, j) = v;
      mat_(j, i) = std::conj(v);
    }
  }
}

}  // namespace relbound
