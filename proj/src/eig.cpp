#include "relbound/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relbound/config.hpp"

namespace relbound {

namespace {

constexpr int kSweepBudget = 30;
constexpr double kOffTol = 1e-14;  // off(A) <= kOffTol * ||A||_F stops sweeps

double offdiag_norm(const Matrix& a) {
  double sum = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One Jacobi rotation annihilating the (p,q) off-diagonal pair of the
// Hermitian working matrix; the same rotation is accumulated into V.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const cxd g = a(p, q);
  const double absg = std::abs(g);
  if (absg == 0.0) return;
  const cxd u = g / absg;  // phase of the pivot
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();
  const double tau = (beta - alpha) / (2.0 * absg);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // J = [[u*c, u*s], [-s, c]] acting on columns (p, q); apply A <- J* A J.
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const cxd aip = a(i, p);
    const cxd aiq = a(i, q);
    a(i, p) = c * u * aip - s * aiq;
    a(i, q) = s * u * aip + c * aiq;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const cxd apj = a(p, j);
    const cxd aqj = a(q, j);
    a(p, j) = c * std::conj(u) * apj - s * aqj;
    a(q, j) = s * std::conj(u) * apj + c * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cxd(a(p, p).real(), 0.0);
  a(q, q) = cxd(a(q, q).real(), 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const cxd vip = v(i, p);
    const cxd viq = v(i, q);
    v(i, p) = c * u * vip - s * viq;
    v(i, q) = s * u * vip + c * viq;
  }
}

}  // namespace

double SpectralDecomposition::norm() const {
  double best = 0.0;
  for (double lam : eigenvalues) best = std::max(best, std::abs(lam));
  return best;
}

SpectralDecomposition hermitian_eig(const HermitianMatrix& a,
                                    Ordering ordering) {
  const std::size_t n = a.size();
  Matrix work = a.matrix();
  Matrix v = Matrix::identity(n);
  const double fnorm = frobenius_norm(work);

  if (fnorm > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < kSweepBudget; ++sweep) {
      if (offdiag_norm(work) <= kOffTol * fnorm) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
          if (std::abs(work(p, q)) > 1e-300) rotate(work, v, p, q);
    }
    if (!converged && offdiag_norm(work) > kOffTol * fnorm)
      fail(ErrorCode::NoConvergence,
           "Jacobi eigensolver did not converge within the sweep budget");
  }

  std::vector<double> lam(n);
  for (std::size_t i = 0; i < n; ++i) lam[i] = work(i, i).real();

  double spectral = 0.0;
  for (double l : lam) spectral = std::max(spectral, std::abs(l));
  const double zero_tol = rank_threshold(n, spectral);

  // Stable sort so equal eigenvalues keep the diagonalizer's column order.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t rank = 0;
  if (ordering == Ordering::Decreasing) {
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return lam[x] > lam[y]; });
    for (double l : lam)
      if (std::abs(l) > zero_tol) ++rank;
  } else {
    auto is_zero = [&](std::size_t idx) { return std::abs(lam[idx]) <= zero_tol; };
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
      const bool zx = is_zero(x), zy = is_zero(y);
      if (zx != zy) return zy;  // nonzero first
      if (zx) return false;
      return lam[x] > lam[y];
    });
    for (std::size_t idx = 0; idx < n; ++idx)
      if (!is_zero(idx)) ++rank;
  }

  SpectralDecomposition dec;
  dec.V = Matrix(n, n);
  dec.eigenvalues.resize(n);
  dec.ordering = ordering;
  dec.rank = rank;
  for (std::size_t j = 0; j < n; ++j) {
    double value = lam[perm[j]];
    if (ordering == Ordering::InertiaDefault && j >= rank) value = 0.0;
    dec.eigenvalues[j] = value;
    for (std::size_t i = 0; i < n; ++i) dec.V(i, j) = v(i, perm[j]);
  }
  return dec;
}

ThinSpectral thin_spectral(const SpectralDecomposition& dec) {
  if (dec.ordering != Ordering::InertiaDefault)
    fail(ErrorCode::InvalidArgument,
         "thin spectral decomposition needs InertiaDefault ordering");
  ThinSpectral thin;
  thin.Vr = dec.V.leading_columns(dec.rank);
  thin.Dr.assign(dec.eigenvalues.begin(), dec.eigenvalues.begin() + dec.rank);
  return thin;
}

PolarFactors polar_factor(const SpectralDecomposition& dec) {
  if (dec.ordering != Ordering::InertiaDefault)
    fail(ErrorCode::InvalidArgument, "polar factor needs InertiaDefault ordering");
  const std::size_t n = dec.size();
  std::vector<double> p_diag(n, 0.0), s_diag(n, 1.0);
  for (std::size_t i = 0; i < dec.rank; ++i) {
    p_diag[i] = std::abs(dec.eigenvalues[i]);
    s_diag[i] = dec.eigenvalues[i] >= 0.0 ? 1.0 : -1.0;
  }
  PolarFactors out;
  out.P = dec.V * Matrix::diagonal(p_diag) * adjoint(dec.V);
  out.S = dec.V * Matrix::diagonal(s_diag) * adjoint(dec.V);
  return out;
}

Matrix pinv_sqrt(const SpectralDecomposition& dec) {
  if (dec.ordering != Ordering::InertiaDefault)
    fail(ErrorCode::InvalidArgument, "pinv_sqrt needs InertiaDefault ordering");
  const std::size_t n = dec.size();
  std::vector<cxd> diag(n, cxd(0.0, 0.0));
  for (std::size_t i = 0; i < dec.rank; ++i) {
    const double lam = dec.eigenvalues[i];
    const double inv = 1.0 / std::sqrt(std::abs(lam));
    // Principal branch: lambda^{1/2} = i sqrt(|lambda|) for lambda < 0,
    // hence lambda^{-1/2} = -i / sqrt(|lambda|).
    diag[i] = lam >= 0.0 ? cxd(inv, 0.0) : cxd(0.0, -inv);
  }
  return dec.V * Matrix::diagonal(diag) * adjoint(dec.V);
}

Matrix pinv_sqrt_polar(const SpectralDecomposition& dec) {
  if (dec.ordering != Ordering::InertiaDefault)
    fail(ErrorCode::InvalidArgument,
         "pinv_sqrt_polar needs InertiaDefault ordering");
  const std::size_t n = dec.size();
  std::vector<double> diag(n, 0.0);
  for (std::size_t i = 0; i < dec.rank; ++i)
    diag[i] = 1.0 / std::sqrt(std::abs(dec.eigenvalues[i]));
  return dec.V * Matrix::diagonal(diag) * adjoint(dec.V);
}

std::vector<double> decreasing_spectrum(const SpectralDecomposition& dec) {
  std::vector<double> lam = dec.eigenvalues;
  std::stable_sort(lam.begin(), lam.end(), std::greater<double>());
  return lam;
}

}  // namespace relbound
