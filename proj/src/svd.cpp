#include "relbound/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relbound/config.hpp"

namespace relbound {

namespace {

constexpr int kSweepBudget = 30;
constexpr double kPairTol = 1e-15;  // |<cp,cq>| <= tol * |cp| |cq| skips the pair

// One-sided Jacobi on the columns of g, accumulating rotations into v.
// On exit the columns of g are mutually orthogonal.
void orthogonalize_columns(Matrix& g, Matrix& v) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  for (int sweep = 0; sweep < kSweepBudget; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double a = 0.0, b = 0.0;
        cxd c(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          a += std::norm(g(i, p));
          b += std::norm(g(i, q));
          c += std::conj(g(i, p)) * g(i, q);
        }
        const double absc = std::abs(c);
        if (a == 0.0 || b == 0.0 || absc <= kPairTol * std::sqrt(a * b))
          continue;
        rotated = true;
        // Diagonalize the 2x2 Gram block [[a, c], [conj(c), b]].
        const cxd u = c / absc;
        const double tau = (b - a) / (2.0 * absc);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        for (std::size_t i = 0; i < m; ++i) {
          const cxd gip = g(i, p);
          const cxd giq = g(i, q);
          g(i, p) = cs * u * gip - sn * giq;
          g(i, q) = sn * u * gip + cs * giq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cxd vip = v(i, p);
          const cxd viq = v(i, q);
          v(i, p) = cs * u * vip - sn * viq;
          v(i, q) = sn * u * vip + cs * viq;
        }
      }
    }
    if (!rotated) return;
  }
  fail(ErrorCode::NoConvergence,
       "one-sided Jacobi SVD did not converge within the sweep budget");
}

// Extend the first `k` orthonormal columns of u to a full unitary basis.
void complete_basis(Matrix& u, std::size_t k) {
  const std::size_t m = u.rows();
  std::size_t filled = k;
  for (std::size_t e = 0; e < m && filled < m; ++e) {
    std::vector<cxd> cand(m, cxd(0.0, 0.0));
    cand[e] = 1.0;
    // Two Gram-Schmidt passes keep orthogonality at machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < filled; ++j) {
        cxd proj(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) proj += std::conj(u(i, j)) * cand[i];
        for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * u(i, j);
      }
    }
    double nrm = 0.0;
    for (const auto& x : cand) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm < 0.5) continue;  // e-th axis already spanned
    for (std::size_t i = 0; i < m; ++i) u(i, filled) = cand[i] / nrm;
    ++filled;
  }
}

SvdFactors svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix g = a;
  Matrix v = Matrix::identity(n);
  orthogonalize_columns(g, v);

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(g(i, j));
    sig[j] = std::sqrt(s);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  SvdFactors out;
  out.sigma.resize(n);
  out.V = Matrix(n, n);
  out.U = Matrix(m, m);
  const double sigma_max = sig[perm[0]];
  const double zero_tol = rank_threshold(std::max(m, n), sigma_max);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    out.sigma[j] = sig[perm[j]];
    for (std::size_t i = 0; i < n; ++i) out.V(i, j) = v(i, perm[j]);
    if (out.sigma[j] > zero_tol) ++rank;
  }
  out.rank = rank;
  // Left vectors by normalizing columns whose norm is safely above rounding
  // noise; the remaining columns of U come from basis completion.
  const double normalize_tol = 1e-14 * sigma_max;
  std::size_t lead = 0;
  while (lead < n && out.sigma[lead] > normalize_tol) {
    for (std::size_t i = 0; i < m; ++i)
      out.U(i, lead) = g(i, perm[lead]) / out.sigma[lead];
    ++lead;
  }
  complete_basis(out.U, lead);
  return out;
}

}  // namespace

SvdFactors svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    fail(ErrorCode::InvalidArgument, "empty matrix");
  if (!a.all_finite())
    fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdFactors t = svd_tall(adjoint(a));
  SvdFactors out;
  out.U = t.V;
  out.V = t.U;
  out.sigma = t.sigma;
  out.rank = t.rank;
  return out;
}

Matrix pseudo_inverse(const Matrix& a) {
  SvdFactors f = svd(a);
  Matrix out(a.cols(), a.rows());
  // Vr Sigma_r^{-1} Ur* accumulated column by column.
  for (std::size_t k = 0; k < f.rank; ++k) {
    const double inv = 1.0 / f.sigma[k];
    for (std::size_t j = 0; j < a.rows(); ++j) {
      const cxd w = inv * std::conj(f.U(j, k));
      for (std::size_t i = 0; i < a.cols(); ++i) out(i, j) += f.V(i, k) * w;
    }
  }
  return out;
}

double spectral_norm(const Matrix& a) {
  if (max_abs(a) == 0.0) return 0.0;
  return svd(a).sigma[0];
}

}  // namespace relbound
