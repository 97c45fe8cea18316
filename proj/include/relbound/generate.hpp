#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relbound/matrix.hpp"

namespace relbound {

struct SpectrumSpec {
  enum class Kind { Explicit, LogUniform, Clustered, Signed };
  Kind kind = Kind::LogUniform;
  std::vector<double> values;  // Explicit
  double lo = 1e-3, hi = 1e3;  // LogUniform magnitude range
  double value = 1.0;          // Clustered value
  std::size_t mult = 1;        // Clustered multiplicity
  double mix = 0.5;            // fraction of negative eigenvalues (Signed)
};

struct InstanceSpec {
  std::size_t n = 0;
  std::optional<std::size_t> m;  // set for rectangular instances
  std::size_t rank = 0;
  SpectrumSpec spectrum;
  std::optional<double> target_k;
  bool psd = false;
  std::uint64_t seed = 0;

  void validate() const;  // throws SpecInvalid
};

/// A = Q diag(spectrum, zeros) Q* with a seeded Haar unitary Q; bit
/// reproducible for a given spec + seed.
HermitianMatrix gen_hermitian(const InstanceSpec& spec);

/// Hermitian perturbation supported on range(A), rescaled so that
/// k_sqrt(A, E) equals target_k exactly up to rounding. When with_kernel is
/// set, a kernel-space Hermitian component of comparable scale is added;
/// it cannot change k.
HermitianMatrix gen_perturbation(const HermitianMatrix& a, double target_k,
                                 std::uint64_t seed, bool with_kernel = false);

/// Rectangular m x n matrix of rank r with prescribed singular values.
Matrix gen_rectangular(const InstanceSpec& spec);

/// Rectangular perturbation rescaled so k_singular(A, E) = target_k.
Matrix gen_rect_perturbation(const Matrix& a, double target_k,
                             std::uint64_t seed);

/// Draws the nonzero spectrum for a spec (signs honored, psd forces
/// positive entries).
std::vector<double> draw_spectrum(const InstanceSpec& spec);

/// Parses a spec from JSON: {"n", "m"?, "rank", "spectrum": {"kind", ...},
/// "target_k"?, "psd"?, "seed"?}. Throws ParseError / SpecInvalid.
InstanceSpec instance_spec_from_json(const std::string& text);

}  // namespace relbound
