#pragma once

#include <cstdint>

#include "relbound/bounds.hpp"
#include "relbound/eig.hpp"
#include "relbound/matrix.hpp"

namespace relbound {

/// Admissibility of a congruence transformation D and, when evaluated, the
/// agreement of the bound constant across the transformation.
struct CongruenceCheck {
  double commute_residual = 0.0;  // ||D*D VrVr* - VrVr* D*D||
  bool admissible = false;
  double k_original = 0.0;
  double k_transformed = 0.0;
  double invariance_gap = 0.0;  // |k_original - k_transformed| / max(k, eps)
};

/// Checks that D is invertible and D*D commutes with the range projector of
/// the decomposition. Leaves the k fields at zero.
CongruenceCheck check_admissible(const Matrix& d,
                                 const SpectralDecomposition& dec);

/// Evaluates k on both sides of the congruence transformation: the original
/// pair (A, E) and the transformed pair via the polar factor
/// P~ = D P D*, E~ = D E D*.
CongruenceCheck k_invariance(const HermitianMatrix& a, const HermitianMatrix& e,
                             const Matrix& d);

/// Seeded generator of admissible D = U Sigma (V S)* with condition number at
/// most kappa_max; always passes check_admissible.
Matrix generate_admissible_D(const SpectralDecomposition& dec,
                             std::uint64_t seed, double kappa_max);

/// k evaluated through the transformed polar factor D P D* without the
/// admissibility gate. Equals k_sqrt(A, E) only for admissible D; used as a
/// diagnostic for non-admissible transformations.
double k_transformed_raw(const HermitianMatrix& a, const HermitianMatrix& e,
                         const Matrix& d);

/// Bound report for the spectrum of A~ + E~ (both must be PSD) using the
/// untransformed constant k = k_sqrt(A, E).
EigenBoundReport congruence_bounds(const HermitianMatrix& a,
                                   const HermitianMatrix& e, const Matrix& d);

}  // namespace relbound
