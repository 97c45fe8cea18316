#include "relbound/singular.hpp"

#include <algorithm>
#include <cmath>

#include "relbound/config.hpp"

namespace relbound {

namespace {

void require_same_shape(const Matrix& a, const Matrix& e) {
  if (a.rows() != e.rows() || a.cols() != e.cols())
    fail(ErrorCode::DimensionMismatch, "A and E must have the same shape");
}

KEstimate make_estimate(double value, KFormula formula) {
  KEstimate k;
  k.value = value;
  k.formula = formula;
  k.admissible = value <= 1.0 + tol::k_slack;
  return k;
}

// Vr f(sigma_r) Ur* accumulated from thin factors.
Matrix scaled_outer(const SvdFactors& f, std::size_t rows, std::size_t cols,
                    const std::vector<double>& weights) {
  Matrix out(rows, cols);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    for (std::size_t j = 0; j < cols; ++j) {
      const cxd w = weights[k] * std::conj(f.U(j, k));
      for (std::size_t i = 0; i < rows; ++i) out(i, j) += f.V(i, k) * w;
    }
  }
  return out;
}

}  // namespace

HermitianMatrix jordan_wielandt(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix embed(m + n, m + n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      embed(i, m + j) = a(i, j);
      embed(m + j, i) = std::conj(a(i, j));
    }
  return HermitianMatrix(embed);
}

Matrix pseudo_half_pinv(const Matrix& a) {
  if (a.rows() < a.cols())
    fail(ErrorCode::OrientationError,
         "pseudo_half_pinv needs m >= n; transpose first");
  const SvdFactors f = svd(a);
  std::vector<double> weights(f.rank);
  for (std::size_t k = 0; k < f.rank; ++k)
    weights[k] = 1.0 / std::sqrt(f.sigma[k]);
  return scaled_outer(f, a.cols(), a.rows(), weights);
}

KEstimate k_singular(const Matrix& a, const Matrix& e) {
  require_same_shape(a, e);
  if (a.rows() >= a.cols()) {
    const Matrix sp = pseudo_half_pinv(a);
    return make_estimate(spectral_norm(sp * e * sp), KFormula::PseudoHalf);
  }
  const Matrix sp = pseudo_half_pinv(adjoint(a));
  return make_estimate(spectral_norm(sp * adjoint(e) * sp),
                       KFormula::PseudoHalf);
}

KEstimate k_singular_polar(const Matrix& a, const Matrix& e) {
  if (!a.is_square()) fail(ErrorCode::NotSquare, "A must be square");
  require_same_shape(a, e);
  const std::size_t n = a.rows();
  const SvdFactors f = svd(a);
  std::vector<double> weights(f.rank);
  for (std::size_t k = 0; k < f.rank; ++k)
    weights[k] = 1.0 / std::sqrt(f.sigma[k]);
  // (P1^{1/2})^+ = Ur Sigma_r^{-1/2} Ur*, (P2^{1/2})^+ = Vr Sigma_r^{-1/2} Vr*.
  Matrix p1h(n, n), p2h(n, n);
  for (std::size_t k = 0; k < f.rank; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const cxd wu = weights[k] * std::conj(f.U(j, k));
      const cxd wv = weights[k] * std::conj(f.V(j, k));
      for (std::size_t i = 0; i < n; ++i) {
        p1h(i, j) += f.U(i, k) * wu;
        p2h(i, j) += f.V(i, k) * wv;
      }
    }
  return make_estimate(spectral_norm(p1h * e * p2h), KFormula::TwoSidedPolar);
}

SingularBoundReport singular_bounds(const Matrix& a, const Matrix& e) {
  require_same_shape(a, e);
  const KEstimate k = k_singular(a, e);
  if (!k.admissible)
    fail(ErrorCode::KTooLarge, "k exceeds 1 beyond slack");

  const SvdFactors f = svd(a);
  SingularBoundReport report;
  report.m = a.rows();
  report.n = a.cols();
  report.r = f.rank;
  report.k = k;

  const std::size_t maxdim = std::max(report.m, report.n);
  const std::size_t upper_count =
      2 * report.r > maxdim ? 2 * report.r - maxdim : 0;
  for (std::size_t i = 1; i <= upper_count; ++i) {
    const double sig = f.sigma[i - 1];
    report.upper_entries.push_back(
        {i, sig, (1.0 + k.value) * sig, report.m + report.n - 2 * report.r + i});
  }
  for (std::size_t i = 1; i <= report.r; ++i) {
    const double sig = f.sigma[i - 1];
    report.lower_entries.push_back({i, sig, (1.0 - k.value) * sig});
  }
  return report;
}

Verdict verify_singular_bounds(const Matrix& a, const Matrix& e,
                               const SingularBoundReport& report) {
  require_same_shape(a, e);
  if (report.m != a.rows() || report.n != a.cols())
    fail(ErrorCode::DimensionMismatch, "report does not match the input shape");
  const SvdFactors f = svd(a + e);
  const double slack = tol::check_rel_slack *
                       std::max(spectral_norm(a), spectral_norm(e));

  Verdict verdict;
  auto record = [&](double margin) {
    if (margin < 0.0) verdict.holds = false;
    verdict.worst_violation = std::min(verdict.worst_violation, margin);
  };
  for (const auto& entry : report.upper_entries)
    record(entry.ceiling + slack - f.sigma[entry.target_index - 1]);
  for (const auto& entry : report.lower_entries)
    record(f.sigma[entry.index - 1] - (entry.floor - slack));
  return verdict;
}

}  // namespace relbound
