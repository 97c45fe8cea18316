#pragma once

#include <cstdint>
#include <vector>

#include "relbound/matrix.hpp"

namespace relbound {

enum class Ordering : std::uint8_t {
  /// All eigenvalues sorted non-increasingly.
  Decreasing,
  /// Nonzero eigenvalues non-increasing at positions 0..r-1, exact zeros
  /// (flushed below the rank threshold) at positions r..n-1.
  InertiaDefault,
};

/// Full unitary diagonalization A = V diag(eigenvalues) V* with the numerical
/// rank r detected against rank_threshold(n, ||A||).
struct SpectralDecomposition {
  Matrix V;                        // n x n unitary
  std::vector<double> eigenvalues; // length n, ordered per `ordering`
  std::size_t rank = 0;
  Ordering ordering = Ordering::InertiaDefault;

  std::size_t size() const { return eigenvalues.size(); }
  /// max_i |lambda_i|, the spectral norm of the source matrix.
  double norm() const;
};

/// The rank-r part only: A = Vr diag(Dr) Vr* with every Dr entry nonzero.
struct ThinSpectral {
  Matrix Vr;               // n x r, orthonormal columns
  std::vector<double> Dr;  // length r, nonzero
};

struct PolarFactors {
  Matrix P;  // Hermitian positive semi-definite polar factor
  Matrix S;  // sign part, identity on the kernel
};

/// Two-sided cyclic Jacobi diagonalization of a Hermitian matrix.
/// Throws NoConvergence if the off-diagonal mass does not fall below the
/// convergence threshold within the sweep budget.
SpectralDecomposition hermitian_eig(const HermitianMatrix& a,
                                    Ordering ordering = Ordering::InertiaDefault);

/// Requires InertiaDefault ordering (Vr = leading r columns of V).
ThinSpectral thin_spectral(const SpectralDecomposition& dec);

/// P = Vr |Dr| Vr*, S = Vr sign(Dr) Vr* + (I - Vr Vr*).
PolarFactors polar_factor(const SpectralDecomposition& dec);

/// (A^{1/2})^+ = Vr Dr^{-1/2} Vr* with the principal branch per eigenvalue
/// (negative eigenvalues contribute a factor -i/sqrt(|lambda|)).
Matrix pinv_sqrt(const SpectralDecomposition& dec);

/// (P^{1/2})^+ = Vr |Dr|^{-1/2} Vr*; Hermitian positive semi-definite.
Matrix pinv_sqrt_polar(const SpectralDecomposition& dec);

/// Eigenvalues of `dec` reordered to plain non-increasing order
/// (zeros interleaved by value).
std::vector<double> decreasing_spectrum(const SpectralDecomposition& dec);

}  // namespace relbound
