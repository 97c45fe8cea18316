#pragma once

#include <cstddef>

namespace relbound {

// Numerical policy shared across the library. Every threshold that gates a
// mathematical statement lives here so tests and the CLI agree on one value.
namespace tol {

/// Relative factor tau in the numerical-rank threshold rank_tol = tau * n * ||A||.
/// Overridable via the RELBOUND_RANK_TOL environment variable.
double rank_tau();

inline constexpr double herm = 1e-12;
inline constexpr double ortho = 1e-12;          // scaled by n at the check site
inline constexpr double k_slack = 1e-10;        // slack on the k <= 1 gate
inline constexpr double factor = 1e-8;          // commuting-factorization check
inline constexpr double commute = 1e-10;        // D*D vs range projector
inline constexpr double invariance = 1e-8;      // congruence k agreement
inline constexpr double mult_rel_gap = 1e-10;   // eigenvalue clustering
inline constexpr double check_rel_slack = 1e-10;  // bound verification slack
inline constexpr double gap_floor = 1e-300;     // denominator floor for k = 0

}  // namespace tol

/// Threshold below which an eigenvalue or singular value counts as zero.
double rank_threshold(std::size_t n, double norm);

}  // namespace relbound
