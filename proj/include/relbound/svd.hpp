#pragma once

#include <vector>

#include "relbound/matrix.hpp"

namespace relbound {

/// A = U diag(sigma) V* with full square unitary factors and the numerical
/// rank detected against rank_threshold(max(m,n), sigma[0]).
struct SvdFactors {
  Matrix U;                  // m x m unitary
  std::vector<double> sigma; // length min(m,n), non-increasing, >= 0
  Matrix V;                  // n x n unitary
  std::size_t rank = 0;
};

/// One-sided Jacobi SVD (transposes internally when m < n).
SvdFactors svd(const Matrix& a);

/// Moore-Penrose pseudo-inverse Vr Sigma_r^{-1} Ur*; zero maps to zero.
Matrix pseudo_inverse(const Matrix& a);

/// 2-norm, sigma_1(A).
double spectral_norm(const Matrix& a);

}  // namespace relbound
