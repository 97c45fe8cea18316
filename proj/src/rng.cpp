#include "relbound/rng.hpp"

#include <cmath>
#include <numbers>

namespace relbound {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cxd Rng::complex_normal() {
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  return cxd(normal() * inv_sqrt2, normal() * inv_sqrt2);
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

Matrix haar_unitary(Rng& rng, std::size_t n) {
  Matrix g = gaussian_matrix(rng, n, n);
  Matrix q(n, n);
  // Modified Gram-Schmidt with a second pass; Gaussian columns are well
  // conditioned so this reaches machine-precision orthogonality.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cxd> col = g.column(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cxd proj(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * col[i];
        for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q(i, k);
      }
    }
    // Normalizing by the column norm fixes R's diagonal positive real, which
    // is the phase convention that makes the resulting Q Haar-distributed.
    double nrm = 0.0;
    for (const auto& x : col) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
  }
  return q;
}

Matrix gaussian_hermitian(Rng& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = rng.normal();
    for (std::size_t i = 0; i < j; ++i) {
      const cxd v = rng.complex_normal();
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace relbound
