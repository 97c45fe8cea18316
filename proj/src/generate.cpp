#include "relbound/generate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "relbound/bounds.hpp"
#include "relbound/config.hpp"
#include "relbound/rng.hpp"
#include "relbound/singular.hpp"
#include "relbound/svd.hpp"

namespace relbound {

void InstanceSpec::validate() const {
  if (n == 0) fail(ErrorCode::SpecInvalid, "n must be >= 1");
  const std::size_t min_dim = m ? std::min(*m, n) : n;
  if (rank > min_dim)
    fail(ErrorCode::SpecInvalid, "rank exceeds the smallest dimension");
  if (spectrum.kind == SpectrumSpec::Kind::Explicit) {
    if (spectrum.values.size() != rank)
      fail(ErrorCode::SpecInvalid, "explicit spectrum length must equal rank");
    for (double v : spectrum.values)
      if (v == 0.0)
        fail(ErrorCode::SpecInvalid, "explicit spectrum entries must be nonzero");
  }
  if (spectrum.kind == SpectrumSpec::Kind::LogUniform ||
      spectrum.kind == SpectrumSpec::Kind::Signed) {
    if (!(spectrum.lo > 0.0) || !(spectrum.hi >= spectrum.lo))
      fail(ErrorCode::SpecInvalid, "need 0 < lo <= hi for magnitude range");
  }
  if (spectrum.kind == SpectrumSpec::Kind::Clustered &&
      (spectrum.value == 0.0 || spectrum.mult > rank))
    fail(ErrorCode::SpecInvalid, "clustered spectrum needs nonzero value, mult <= rank");
  if (target_k && !(*target_k > 0.0 && *target_k <= 1.0))
    fail(ErrorCode::SpecInvalid, "target_k must lie in (0, 1]");
}

std::vector<double> draw_spectrum(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed ^ 0x5eedULL);
  std::vector<double> lam(spec.rank);
  const double log_lo = std::log(spec.spectrum.lo);
  const double log_hi = std::log(spec.spectrum.hi);
  switch (spec.spectrum.kind) {
    case SpectrumSpec::Kind::Explicit:
      lam = spec.spectrum.values;
      break;
    case SpectrumSpec::Kind::LogUniform:
      for (auto& v : lam) v = std::exp(rng.uniform(log_lo, log_hi));
      break;
    case SpectrumSpec::Kind::Signed:
      for (auto& v : lam) {
        v = std::exp(rng.uniform(log_lo, log_hi));
        if (!spec.psd && rng.uniform() < spec.spectrum.mix) v = -v;
      }
      break;
    case SpectrumSpec::Kind::Clustered: {
      for (std::size_t i = 0; i < spec.spectrum.mult; ++i)
        lam[i] = spec.spectrum.value;
      const double mag = std::abs(spec.spectrum.value);
      for (std::size_t i = spec.spectrum.mult; i < spec.rank; ++i)
        lam[i] = std::exp(rng.uniform(std::log(mag * 2.0), std::log(mag * 64.0)));
      break;
    }
  }
  if (spec.psd)
    for (auto& v : lam) v = std::abs(v);
  return lam;
}

HermitianMatrix gen_hermitian(const InstanceSpec& spec) {
  spec.validate();
  if (spec.m) fail(ErrorCode::SpecInvalid, "square generator got a rectangular spec");
  const std::vector<double> lam = draw_spectrum(spec);
  if (spec.rank == 0) return HermitianMatrix(Matrix(spec.n, spec.n));
  Rng rng(spec.seed);
  const Matrix q = haar_unitary(rng, spec.n);
  std::vector<double> full(spec.n, 0.0);
  std::copy(lam.begin(), lam.end(), full.begin());
  return HermitianMatrix(q * Matrix::diagonal(full) * adjoint(q), 1e-10);
}

HermitianMatrix gen_perturbation(const HermitianMatrix& a, double target_k,
                                 std::uint64_t seed, bool with_kernel) {
  if (!(target_k > 0.0 && target_k <= 1.0))
    fail(ErrorCode::SpecInvalid, "target_k must lie in (0, 1]");
  const SpectralDecomposition dec = hermitian_eig(a);
  if (dec.rank == 0) fail(ErrorCode::ZeroMatrix, "A must be nonzero");
  const std::size_t n = a.size();

  Rng rng(seed);
  const Matrix m = gaussian_hermitian(rng, n);

  // E0 = P^{1/2} M P^{1/2} lives on range(A), and k is linear in the scale of
  // E, so one rescale lands exactly on target_k.
  std::vector<double> half(n, 0.0);
  for (std::size_t i = 0; i < dec.rank; ++i)
    half[i] = std::sqrt(std::abs(dec.eigenvalues[i]));
  const Matrix p_half = dec.V * Matrix::diagonal(half) * adjoint(dec.V);
  Matrix e = p_half * m * p_half;

  const Matrix b = pinv_sqrt_polar(dec);
  const double k0 = spectral_norm(b * e * b);
  if (k0 <= 0.0) fail(ErrorCode::ZeroMatrix, "degenerate perturbation draw");
  e *= target_k / k0;

  if (with_kernel && dec.rank < n) {
    const std::size_t kernel_dim = n - dec.rank;
    const Matrix v_perp = dec.V.trailing_columns(dec.rank);
    const Matrix x = gaussian_hermitian(rng, kernel_dim);
    Matrix kernel_part = v_perp * x * adjoint(v_perp);
    const double scale = frobenius_norm(e) / std::max(frobenius_norm(kernel_part), 1e-300);
    kernel_part *= scale;
    e += kernel_part;
  }
  return HermitianMatrix(e, 1e-10);
}

Matrix gen_rectangular(const InstanceSpec& spec) {
  spec.validate();
  if (!spec.m) fail(ErrorCode::SpecInvalid, "rectangular generator needs m");
  const std::size_t m = *spec.m;
  const std::size_t n = spec.n;
  std::vector<double> sig = draw_spectrum(spec);
  for (auto& v : sig) v = std::abs(v);  // singular values are magnitudes
  std::sort(sig.begin(), sig.end(), std::greater<double>());

  Rng rng(spec.seed);
  const Matrix u = haar_unitary(rng, m);
  const Matrix v = haar_unitary(rng, n);
  Matrix out(m, n);
  for (std::size_t k = 0; k < spec.rank; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const cxd w = sig[k] * std::conj(v(j, k));
      for (std::size_t i = 0; i < m; ++i) out(i, j) += u(i, k) * w;
    }
  return out;
}

Matrix gen_rect_perturbation(const Matrix& a, double target_k,
                             std::uint64_t seed) {
  if (!(target_k > 0.0 && target_k <= 1.0))
    fail(ErrorCode::SpecInvalid, "target_k must lie in (0, 1]");
  Rng rng(seed);
  Matrix e = gaussian_matrix(rng, a.rows(), a.cols());
  const double k0 = k_singular(a, e).value;
  if (k0 <= 0.0) fail(ErrorCode::ZeroMatrix, "A must be nonzero");
  e *= target_k / k0;
  return e;
}

InstanceSpec instance_spec_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::ParseError, std::string("instance spec: ") + ex.what());
  }
  InstanceSpec spec;
  try {
    spec.n = doc.at("n").get<std::size_t>();
    if (doc.contains("m")) spec.m = doc["m"].get<std::size_t>();
    spec.rank = doc.value("rank", spec.n);
    if (doc.contains("target_k")) spec.target_k = doc["target_k"].get<double>();
    spec.psd = doc.value("psd", false);
    spec.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("spectrum")) {
      const auto& s = doc["spectrum"];
      const std::string kind = s.value("kind", "log_uniform");
      if (kind == "explicit")
        spec.spectrum.kind = SpectrumSpec::Kind::Explicit;
      else if (kind == "log_uniform")
        spec.spectrum.kind = SpectrumSpec::Kind::LogUniform;
      else if (kind == "clustered")
        spec.spectrum.kind = SpectrumSpec::Kind::Clustered;
      else if (kind == "signed")
        spec.spectrum.kind = SpectrumSpec::Kind::Signed;
      else
        fail(ErrorCode::SpecInvalid, "unknown spectrum kind: " + kind);
      if (s.contains("values"))
        spec.spectrum.values = s["values"].get<std::vector<double>>();
      spec.spectrum.lo = s.value("lo", spec.spectrum.lo);
      spec.spectrum.hi = s.value("hi", spec.spectrum.hi);
      spec.spectrum.value = s.value("value", spec.spectrum.value);
      spec.spectrum.mult = s.value("mult", spec.spectrum.mult);
      spec.spectrum.mix = s.value("mix", spec.spectrum.mix);
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::SpecInvalid, std::string("instance spec: ") + ex.what());
  }
  spec.validate();
  return spec;
}

}  // namespace relbound
