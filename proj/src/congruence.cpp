#include "relbound/congruence.hpp"

#include <algorithm>
#include <cmath>

#include "relbound/config.hpp"
#include "relbound/rng.hpp"
#include "relbound/svd.hpp"

namespace relbound {

namespace {

// k = ||(P^{1/2})^+ E (P^{1/2})^+|| for a Hermitian PSD polar factor given as
// a plain matrix.
double k_through_polar(const Matrix& p, const Matrix& e) {
  const HermitianMatrix ph(p, 1e-8);
  const SpectralDecomposition dec = hermitian_eig(ph);
  const Matrix b = pinv_sqrt_polar(dec);
  return spectral_norm(b * e * b);
}

bool is_psd(const SpectralDecomposition& dec) {
  const double floor = -rank_threshold(dec.size(), dec.norm());
  for (double lam : dec.eigenvalues)
    if (lam < floor) return false;
  return true;
}

}  // namespace

CongruenceCheck check_admissible(const Matrix& d,
                                 const SpectralDecomposition& dec) {
  const std::size_t n = dec.size();
  if (!d.is_square() || d.rows() != n)
    fail(ErrorCode::DimensionMismatch, "D must be n x n");
  const SvdFactors df = svd(d);
  if (df.sigma.back() <= rank_threshold(n, df.sigma[0]))
    fail(ErrorCode::NotInvertible, "D is numerically singular");

  const Matrix vr = dec.V.leading_columns(dec.rank);
  const Matrix projector = vr * adjoint(vr);
  const Matrix dd = adjoint(d) * d;

  CongruenceCheck check;
  check.commute_residual = spectral_norm(dd * projector - projector * dd);
  check.admissible =
      check.commute_residual <= tol::commute * spectral_norm(dd);
  return check;
}

CongruenceCheck k_invariance(const HermitianMatrix& a, const HermitianMatrix& e,
                             const Matrix& d) {
  if (a.size() != e.size())
    fail(ErrorCode::DimensionMismatch, "A and E must have the same dimension");
  const SpectralDecomposition dec = hermitian_eig(a);
  CongruenceCheck check = check_admissible(d, dec);
  if (!check.admissible)
    fail(ErrorCode::NotAdmissible, "D*D does not commute with the range projector");

  const Matrix b = pinv_sqrt_polar(dec);
  check.k_original = spectral_norm(b * e.matrix() * b);

  const Matrix p = polar_factor(dec).P;
  const Matrix p_t = d * p * adjoint(d);
  const Matrix e_t = d * e.matrix() * adjoint(d);
  check.k_transformed = k_through_polar(p_t, e_t);
  check.invariance_gap = std::abs(check.k_original - check.k_transformed) /
                         std::max(check.k_original, tol::gap_floor);
  return check;
}

double k_transformed_raw(const HermitianMatrix& a, const HermitianMatrix& e,
                         const Matrix& d) {
  if (a.size() != e.size())
    fail(ErrorCode::DimensionMismatch, "A and E must have the same dimension");
  const SpectralDecomposition dec = hermitian_eig(a);
  const Matrix p = polar_factor(dec).P;
  return k_through_polar(d * p * adjoint(d), d * e.matrix() * adjoint(d));
}

Matrix generate_admissible_D(const SpectralDecomposition& dec,
                             std::uint64_t seed, double kappa_max) {
  if (kappa_max < 1.0)
    fail(ErrorCode::InvalidArgument, "kappa_max must be >= 1");
  const std::size_t n = dec.size();
  Rng rng(seed);
  const Matrix u = haar_unitary(rng, n);
  const std::vector<std::size_t> perm = random_permutation(rng, n);

  // Singular values log-uniform in [1, kappa_max].
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i)
    sigma[i] = std::exp(rng.uniform(0.0, std::log(std::max(kappa_max, 1.0))));

  // Right factor W = V S: then D*D = V (S Sigma^2 S*) V* is diagonal in V's
  // basis, so it commutes with the range projector for any Sigma.
  Matrix w(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w(i, j) = dec.V(i, perm[j]);

  Matrix d(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      cxd sum(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        sum += u(i, k) * sigma[k] * std::conj(w(j, k));
      d(i, j) = sum;
    }
  return d;
}

EigenBoundReport congruence_bounds(const HermitianMatrix& a,
                                   const HermitianMatrix& e, const Matrix& d) {
  if (a.size() != e.size())
    fail(ErrorCode::DimensionMismatch, "A and E must have the same dimension");
  const SpectralDecomposition dec = hermitian_eig(a);
  const CongruenceCheck check = check_admissible(d, dec);
  if (!check.admissible)
    fail(ErrorCode::NotAdmissible, "D*D does not commute with the range projector");

  const HermitianMatrix a_t(d * a.matrix() * adjoint(d), 1e-10);
  const HermitianMatrix e_t(d * e.matrix() * adjoint(d), 1e-10);
  const SpectralDecomposition dec_t = hermitian_eig(a_t);
  if (!is_psd(dec_t))
    fail(ErrorCode::NotPsd, "transformed matrix is not positive semi-definite");
  const HermitianMatrix sum_t(a_t.matrix() + e_t.matrix());
  if (!is_psd(hermitian_eig(sum_t)))
    fail(ErrorCode::NotPsd, "transformed sum is not positive semi-definite");

  // The constant stays on the untransformed pair; only the spectrum moves.
  const Matrix b = pinv_sqrt_polar(dec);
  KEstimate k;
  k.value = spectral_norm(b * e.matrix() * b);
  k.formula = KFormula::SqrtPinv;
  k.admissible = k.value <= 1.0 + tol::k_slack;

  EigenBoundReport report;
  report.n = dec_t.size();
  report.r = dec_t.rank;
  report.k = k;
  report.psd_mode = true;
  for (std::size_t i = 0; i < dec_t.rank; ++i) {
    const double lam = dec_t.eigenvalues[i];
    EigenBoundEntry entry;
    entry.index = i + 1;
    entry.lambda = lam;
    entry.lower = lam - k.value * std::abs(lam);
    entry.upper = lam + k.value * std::abs(lam);
    entry.upper_index = report.n - report.r + i + 1;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace relbound
