#include "relbound/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "relbound/config.hpp"
#include "relbound/svd.hpp"

namespace relbound {

namespace {

void require_same_size(const HermitianMatrix& a, const HermitianMatrix& e) {
  if (a.size() != e.size())
    fail(ErrorCode::DimensionMismatch, "A and E must have the same dimension");
}

KEstimate make_estimate(double value, KFormula formula) {
  KEstimate k;
  k.value = value;
  k.formula = formula;
  k.admissible = value <= 1.0 + tol::k_slack;
  return k;
}

bool is_psd(const SpectralDecomposition& dec) {
  const double floor = -rank_threshold(dec.size(), dec.norm());
  for (double lam : dec.eigenvalues)
    if (lam < floor) return false;
  return true;
}

}  // namespace

const char* k_formula_name(KFormula f) {
  switch (f) {
    case KFormula::SqrtPinv: return "SqrtPinv";
    case KFormula::PinvLeft: return "PinvLeft";
    case KFormula::PinvRight: return "PinvRight";
    case KFormula::GeneralFactor: return "GeneralFactor";
    case KFormula::TwoSidedPolar: return "TwoSidedPolar";
    case KFormula::PseudoHalf: return "PseudoHalf";
  }
  return "Unknown";
}

KEstimate k_sqrt(const HermitianMatrix& a, const HermitianMatrix& e) {
  require_same_size(a, e);
  const SpectralDecomposition dec = hermitian_eig(a);
  const Matrix b = pinv_sqrt_polar(dec);
  return make_estimate(spectral_norm(b * e.matrix() * b), KFormula::SqrtPinv);
}

KEstimate k_pinv(const HermitianMatrix& a, const HermitianMatrix& e,
                 PinvSide side) {
  require_same_size(a, e);
  const Matrix ap = pseudo_inverse(a.matrix());
  const double value = side == PinvSide::Left
                           ? spectral_norm(ap * e.matrix())
                           : spectral_norm(e.matrix() * ap);
  return make_estimate(value, side == PinvSide::Left ? KFormula::PinvLeft
                                                     : KFormula::PinvRight);
}

KEstimate k_general(const HermitianMatrix& a, const HermitianMatrix& e,
                    const Matrix& a1, const Matrix& a2) {
  require_same_size(a, e);
  const std::size_t n = a.size();
  if (!a1.is_square() || !a2.is_square() || a1.rows() != n || a2.rows() != n)
    fail(ErrorCode::DimensionMismatch, "factors must be n x n");
  const double scale = std::max(spectral_norm(a.matrix()), tol::gap_floor);
  if (spectral_norm(a.matrix() - a1 * a2) > tol::factor * scale ||
      spectral_norm(a.matrix() - a2 * a1) > tol::factor * scale)
    fail(ErrorCode::FactorizationInvalid,
         "A = A1 A2 = A2 A1 does not hold within tolerance");
  const double value =
      spectral_norm(pseudo_inverse(a1) * e.matrix() * pseudo_inverse(a2));
  return make_estimate(value, KFormula::GeneralFactor);
}

KEstimate k_general_polar(const HermitianMatrix& a, const HermitianMatrix& e,
                          const Matrix& a1, const Matrix& a2) {
  require_same_size(a, e);
  const std::size_t n = a.size();
  if (!a1.is_square() || !a2.is_square() || a1.rows() != n || a2.rows() != n)
    fail(ErrorCode::DimensionMismatch, "factors must be n x n");

  const Matrix p = polar_factor(hermitian_eig(a)).P;
  // Left polar factor of A1 is (A1 A1*)^{1/2}; right polar factor of A2 is
  // (A2* A2)^{1/2}. Both come out of an SVD directly.
  const SvdFactors f1 = svd(a1);
  const SvdFactors f2 = svd(a2);
  const Matrix p1 = f1.U * Matrix::diagonal(f1.sigma) * adjoint(f1.U);
  const Matrix p2 = f2.V * Matrix::diagonal(f2.sigma) * adjoint(f2.V);

  const double scale = std::max(spectral_norm(p), tol::gap_floor);
  if (spectral_norm(p - p1 * p2) > tol::factor * scale ||
      spectral_norm(p - p2 * p1) > tol::factor * scale)
    fail(ErrorCode::PolarConditionInvalid,
         "P = P1 P2 = P2 P1 does not hold within tolerance");
  const double value =
      spectral_norm(pseudo_inverse(a1) * e.matrix() * pseudo_inverse(a2));
  return make_estimate(value, KFormula::GeneralFactor);
}

EigenBoundReport eigen_bounds(const HermitianMatrix& a,
                              const HermitianMatrix& e, const KEstimate& k,
                              bool psd_mode) {
  require_same_size(a, e);
  if (k.value < 0.0) fail(ErrorCode::InvalidArgument, "k must be >= 0");
  const SpectralDecomposition dec = hermitian_eig(a);
  if (psd_mode) {
    if (!is_psd(dec))
      fail(ErrorCode::NotPsd, "psd_mode requires A positive semi-definite");
    const HermitianMatrix sum(a.matrix() + e.matrix());
    if (!is_psd(hermitian_eig(sum)))
      fail(ErrorCode::NotPsd, "psd_mode requires A+E positive semi-definite");
  } else if (!k.admissible) {
    fail(ErrorCode::KTooLarge, "k exceeds 1 beyond slack and psd_mode is off");
  }

  EigenBoundReport report;
  report.n = dec.size();
  report.r = dec.rank;
  report.k = k;
  report.psd_mode = psd_mode;
  report.entries.reserve(dec.rank);
  for (std::size_t i = 0; i < dec.rank; ++i) {
    const double lam = dec.eigenvalues[i];
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

Verdict verify_eigen_bounds(const HermitianMatrix& a, const HermitianMatrix& e,
                            const EigenBoundReport& report) {
  require_same_size(a, e);
  if (report.n != a.size())
    fail(ErrorCode::DimensionMismatch, "report does not match the input size");
  const HermitianMatrix sum(a.matrix() + e.matrix());
  const SpectralDecomposition dec = hermitian_eig(sum, Ordering::Decreasing);
  const double slack =
      tol::check_rel_slack *
      std::max(spectral_norm(a.matrix()), spectral_norm(e.matrix()));

  Verdict verdict;
  for (const auto& entry : report.entries) {
    const double upper_margin =
        entry.upper + slack - dec.eigenvalues[entry.upper_index - 1];
    const double lower_margin =
        dec.eigenvalues[entry.index - 1] - (entry.lower - slack);
    const double margin = std::min(upper_margin, lower_margin);
    if (margin < 0.0) verdict.holds = false;
    verdict.worst_violation = std::min(verdict.worst_violation, margin);
  }
  return verdict;
}

}  // namespace relbound
