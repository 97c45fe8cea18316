#pragma once

#include <vector>

#include "relbound/bounds.hpp"
#include "relbound/matrix.hpp"
#include "relbound/svd.hpp"

namespace relbound {

struct SingularUpperEntry {
  std::size_t index;         // i, 1-based
  double sigma;              // sigma_i(A)
  double ceiling;            // (1 + k) sigma_i(A)
  std::size_t target_index;  // m + n - 2r + i in the tall orientation
};

struct SingularLowerEntry {
  std::size_t index;  // i, 1-based
  double sigma;       // sigma_i(A)
  double floor;       // (1 - k) sigma_i(A)
};

struct SingularBoundReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  KEstimate k;
  std::vector<SingularUpperEntry> upper_entries;  // i in 1..max(0, 2r-max(m,n))
  std::vector<SingularLowerEntry> lower_entries;  // i in 1..r
};

/// The (m+n) x (m+n) Hermitian embedding [[0, A], [A*, 0]].
HermitianMatrix jordan_wielandt(const Matrix& a);

/// S^+ = Vr Sigma_r^{-1/2} Ur* for a tall or square matrix.
/// Throws OrientationError when m < n.
Matrix pseudo_half_pinv(const Matrix& a);

/// k = ||S^+ E S^+||, transposing internally when m < n.
KEstimate k_singular(const Matrix& a, const Matrix& e);

/// Square-matrix variant k = ||(P1^{1/2})^+ E (P2^{1/2})^+|| through the two
/// one-sided polar factors.
KEstimate k_singular_polar(const Matrix& a, const Matrix& e);

/// Relative bounds for the singular values of A + E at k = k_singular(A, E).
SingularBoundReport singular_bounds(const Matrix& a, const Matrix& e);

/// Recomputes svd(A+E) and checks every ceiling and floor with slack.
Verdict verify_singular_bounds(const Matrix& a, const Matrix& e,
                               const SingularBoundReport& report);

}  // namespace relbound
