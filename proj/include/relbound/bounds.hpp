#pragma once

#include <cstdint>
#include <vector>

#include "relbound/eig.hpp"
#include "relbound/matrix.hpp"

namespace relbound {

enum class KFormula : std::uint8_t {
  SqrtPinv,      // ||(P^{1/2})^+ E (P^{1/2})^+||
  PinvLeft,      // ||A^+ E||
  PinvRight,     // ||E A^+||
  GeneralFactor, // ||A1^+ E A2^+|| for a commuting factorization
  TwoSidedPolar, // ||(P1^{1/2})^+ E (P2^{1/2})^+|| (square singular case)
  PseudoHalf,    // ||S^+ E S^+|| (rectangular singular case)
};

const char* k_formula_name(KFormula f);

/// A bound constant together with the formula that produced it and whether it
/// passes the k <= 1 admissibility gate (with slack).
struct KEstimate {
  double value = 0.0;
  KFormula formula = KFormula::SqrtPinv;
  bool admissible = false;
};

enum class PinvSide : std::uint8_t { Left, Right };

struct EigenBoundEntry {
  std::size_t index;        // i, 1-based
  double lambda;            // lambda_i(A), inertia-default order
  double lower;             // floor for lambda_i(A+E)
  double upper;             // ceiling for lambda_{n-r+i}(A+E)
  std::size_t upper_index;  // n - r + i, 1-based
};

struct EigenBoundReport {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<EigenBoundEntry> entries;
  KEstimate k;
  bool psd_mode = false;
};

struct Verdict {
  bool holds = true;
  double worst_violation = 0.0;  // most negative margin across all checks
};

/// k = ||(P^{1/2})^+ E (P^{1/2})^+||, evaluated on the real PSD path.
KEstimate k_sqrt(const HermitianMatrix& a, const HermitianMatrix& e);

/// k = ||A^+ E|| (Left) or ||E A^+|| (Right); the two agree for Hermitian
/// inputs.
KEstimate k_pinv(const HermitianMatrix& a, const HermitianMatrix& e,
                 PinvSide side);

/// k = ||A1^+ E A2^+|| after validating A = A1 A2 = A2 A1.
KEstimate k_general(const HermitianMatrix& a, const HermitianMatrix& e,
                    const Matrix& a1, const Matrix& a2);

/// k = ||A1^+ E A2^+|| after validating P = P1 P2 = P2 P1 on the polar
/// factors (P of A, P1 the left polar factor of A1, P2 the right of A2).
KEstimate k_general_polar(const HermitianMatrix& a, const HermitianMatrix& e,
                          const Matrix& a1, const Matrix& a2);

/// Per-index relative intervals lambda_i -+ k|lambda_i| for i in 1..r.
/// With psd_mode both A and A+E must be PSD and any k >= 0 is accepted;
/// otherwise k must pass the admissibility gate.
EigenBoundReport eigen_bounds(const HermitianMatrix& a,
                              const HermitianMatrix& e, const KEstimate& k,
                              bool psd_mode = false);

/// Re-diagonalizes A+E and checks every interval with verification slack.
Verdict verify_eigen_bounds(const HermitianMatrix& a, const HermitianMatrix& e,
                            const EigenBoundReport& report);

}  // namespace relbound
