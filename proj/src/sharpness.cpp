#include "relbound/sharpness.hpp"

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

// Smallest index (0-based) attaining max_j |lam[j]|; 0 for an all-zero list.
std::size_t argmax_abs(const std::vector<double>& lam) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (std::abs(lam[j]) > best_abs) {
      best_abs = std::abs(lam[j]);
      best = j;
    }
  }
  return best;
}

double min_nonzero_abs(const SpectralDecomposition& dec) {
  double best = 0.0;
  for (std::size_t i = 0; i < dec.rank; ++i) {
    const double v = std::abs(dec.eigenvalues[i]);
    if (i == 0 || v < best) best = v;
  }
  return best;
}

// Everything the Eq. (32) predicate needs, computed once per (A, E) pair so
// evaluating all indices costs no further factorizations. Eq. (28) is the
// r = n specialization.
struct SharpContext {
  std::size_t n, r;
  std::vector<double> a_inertia;  // lambda(A), inertia-default
  std::vector<double> a_dec;      // lambda(A), decreasing
  double min_nz;
  double norm_a;
  double norm_e;
  double e_factor;  // max{|lambda_j'(E)|, |lambda_{n-r+j'}(E)|} / min_nz
  double k;         // ||(P^{1/2})^+ E (P^{1/2})^+||
};

SharpContext make_sharp_context(const SpectralDecomposition& dec_a,
                                const HermitianMatrix& e) {
  SharpContext ctx;
  ctx.n = dec_a.size();
  ctx.r = dec_a.rank;
  ctx.a_inertia = dec_a.eigenvalues;
  ctx.a_dec = decreasing_spectrum(dec_a);
  ctx.min_nz = min_nonzero_abs(dec_a);
  ctx.norm_a = dec_a.norm();

  // j' attains the largest |eigenvalue| of (P^{1/2})^+ E (P^{1/2})^+, read in
  // inertia-default order so j' lands in 1..r (j' = 1 for a zero product).
  const Matrix b = pinv_sqrt_polar(dec_a);
  const HermitianMatrix product(b * e.matrix() * b, 1e-10);
  const SpectralDecomposition dec_m = hermitian_eig(product);
  // 0-based; rank((P^{1/2})^+E(P^{1/2})^+) <= r keeps the argmax inside 1..r,
  // the clamp only guards against rounding noise past the flush threshold.
  const std::size_t jprime = std::min(argmax_abs(dec_m.eigenvalues), ctx.r - 1);
  ctx.k = dec_m.norm();

  const SpectralDecomposition dec_e = hermitian_eig(e, Ordering::Decreasing);
  ctx.norm_e = dec_e.norm();
  const double e_j = std::abs(dec_e.eigenvalues[jprime]);
  const double e_shift = std::abs(dec_e.eigenvalues[ctx.n - ctx.r + jprime]);
  ctx.e_factor = std::max(e_j, e_shift) / ctx.min_nz;
  return ctx;
}

bool condition_32_eval(const SharpContext& ctx, std::size_t i) {
  const double lam_i = ctx.a_inertia[i - 1];
  const double lam_shift = ctx.a_dec[ctx.n - ctx.r + i - 1];
  const double lhs = lam_i - lam_shift + ctx.e_factor * std::abs(lam_i);
  const double slack = 1e-11 * (ctx.norm_a + ctx.norm_e);
  return lhs <= ctx.norm_e + slack;
}

bool condition_32_impl(const SpectralDecomposition& dec_a,
                       const HermitianMatrix& e, std::size_t i) {
  return condition_32_eval(make_sharp_context(dec_a, e), i);
}

}  // namespace

const char* sharp_condition_name(SharpCondition c) {
  switch (c) {
    case SharpCondition::Eq28: return "Eq28";
    case SharpCondition::Eq32: return "Eq32";
    case SharpCondition::None: return "None";
  }
  return "Unknown";
}

std::vector<WeylInterval> weyl_bound(const HermitianMatrix& a,
                                     const HermitianMatrix& e) {
  require_same_size(a, e);
  const SpectralDecomposition dec = hermitian_eig(a, Ordering::Decreasing);
  const double radius = spectral_norm(e.matrix());
  std::vector<WeylInterval> out;
  out.reserve(dec.size());
  for (double lam : dec.eigenvalues)
    out.push_back({lam, lam - radius, lam + radius});
  return out;
}

bool condition_28(const HermitianMatrix& a, const HermitianMatrix& e,
                  std::size_t i) {
  require_same_size(a, e);
  const SpectralDecomposition dec = hermitian_eig(a);
  if (dec.rank < dec.size())
    fail(ErrorCode::SingularInput,
         "condition 28 requires non-singular A; use condition 32");
  if (i < 1 || i > dec.size())
    fail(ErrorCode::IndexOutOfRange, "index out of range");
  return condition_32_impl(dec, e, i);
}

std::size_t exists_sharper_index(const HermitianMatrix& a,
                                 const HermitianMatrix& e) {
  require_same_size(a, e);
  const SpectralDecomposition dec = hermitian_eig(a);
  if (dec.rank < dec.size())
    fail(ErrorCode::SingularInput, "A must be non-singular");
  std::size_t best = 0;
  for (std::size_t i = 1; i < dec.size(); ++i)
    if (std::abs(dec.eigenvalues[i]) < std::abs(dec.eigenvalues[best]))
      best = i;
  return best + 1;
}

bool condition_32(const HermitianMatrix& a, const HermitianMatrix& e,
                  std::size_t i) {
  require_same_size(a, e);
  const SpectralDecomposition dec = hermitian_eig(a);
  if (dec.rank == 0) fail(ErrorCode::ZeroMatrix, "A is zero; no indices");
  if (i < 1 || i > dec.rank)
    fail(ErrorCode::IndexOutOfRange, "index exceeds rank(A)");
  return condition_32_impl(dec, e, i);
}

std::optional<std::size_t> multiplicity_guarantee(const HermitianMatrix& a) {
  const SpectralDecomposition dec = hermitian_eig(a);
  if (dec.rank == 0) fail(ErrorCode::ZeroMatrix, "A is zero");
  const double min_nz = min_nonzero_abs(dec);
  const double gap = tol::mult_rel_gap * dec.norm();

  std::size_t first = 0;
  while (first < dec.rank &&
         std::abs(std::abs(dec.eigenvalues[first]) - min_nz) > gap)
    ++first;
  const double value = dec.eigenvalues[first];
  std::size_t mult = 0;
  for (std::size_t l = 0; l < dec.rank; ++l)
    if (std::abs(dec.eigenvalues[l] - value) <= gap) ++mult;
  if (mult >= dec.size() - dec.rank + 1) return first + 1;
  return std::nullopt;
}

std::vector<SharpnessVerdict> sharpness_report(const HermitianMatrix& a,
                                               const HermitianMatrix& e) {
  require_same_size(a, e);
  const SpectralDecomposition dec = hermitian_eig(a);
  const std::size_t n = dec.size();
  const std::size_t r = dec.rank;
  std::vector<SharpnessVerdict> out;
  if (r == 0) return out;

  const SharpContext ctx = make_sharp_context(dec, e);
  const double slack = tol::check_rel_slack * std::max(ctx.norm_a, ctx.norm_e);
  out.reserve(r);
  for (std::size_t i = 1; i <= r; ++i) {
    SharpnessVerdict v;
    v.index = i;
    v.weyl_radius = ctx.norm_e;
    const double lam = dec.eigenvalues[i - 1];
    v.relative_radius = ctx.k * std::abs(lam);
    v.condition = r == n ? SharpCondition::Eq28 : SharpCondition::Eq32;
    v.condition_met = condition_32_eval(ctx, i);
    // Endpoint comparison against the Weyl intervals: the ceiling pairs with
    // index n-r+i of A's decreasing spectrum, the floor with index i.
    const bool upper_sharper =
        lam + v.relative_radius <= ctx.a_dec[n - r + i - 1] + ctx.norm_e + slack;
    const bool lower_sharper = v.relative_radius <= ctx.norm_e + slack;
    v.sharper = upper_sharper && lower_sharper;
    out.push_back(v);
  }
  return out;
}

}  // namespace relbound
