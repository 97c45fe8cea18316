#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relbound/bounds.hpp"
#include "relbound/matrix.hpp"

namespace relbound {

enum class SharpCondition : std::uint8_t { Eq28, Eq32, None };

const char* sharp_condition_name(SharpCondition c);

/// Per-index comparison of the relative radius k|lambda_i| against the Weyl
/// radius ||E||, with the sufficient condition that certified it (if any).
struct SharpnessVerdict {
  std::size_t index;       // i, 1-based, over the nonzero spectrum
  double weyl_radius;      // ||E||
  double relative_radius;  // k |lambda_i(A)|
  bool condition_met;
  SharpCondition condition;
  bool sharper;  // bound-endpoint comparison (shifted pairing when r < n)
};

struct WeylInterval {
  double lambda;  // lambda_i(A), decreasing order
  double lower;
  double upper;
};

/// [lambda_i - ||E||, lambda_i + ||E||] for every i (decreasing order).
std::vector<WeylInterval> weyl_bound(const HermitianMatrix& a,
                                     const HermitianMatrix& e);

/// Full-rank sufficient condition for k|lambda_i| <= ||E||.
/// i is 1-based. Throws SingularInput when rank(A) < n.
bool condition_28(const HermitianMatrix& a, const HermitianMatrix& e,
                  std::size_t i);

/// Index (1-based) attaining min_l |lambda_l(A)|; always satisfies the
/// guarantee k|lambda_i| <= ||E||. Throws SingularInput when rank(A) < n.
std::size_t exists_sharper_index(const HermitianMatrix& a,
                                 const HermitianMatrix& e);

/// Rank-deficient sufficient condition for both shifted-index comparisons.
/// i is 1-based in 1..r.
bool condition_32(const HermitianMatrix& a, const HermitianMatrix& e,
                  std::size_t i);

/// When the smallest-magnitude nonzero eigenvalue has algebraic multiplicity
/// >= n - r + 1, returns the first index carrying it; empty otherwise.
std::optional<std::size_t> multiplicity_guarantee(const HermitianMatrix& a);

/// Aggregated verdicts for i in 1..r.
std::vector<SharpnessVerdict> sharpness_report(const HermitianMatrix& a,
                                               const HermitianMatrix& e);

}  // namespace relbound
