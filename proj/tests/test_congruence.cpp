#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "relbound/bounds.hpp"
#include "relbound/config.hpp"
#include "relbound/congruence.hpp"
#include "relbound/eig.hpp"
#include "relbound/generate.hpp"
#include "relbound/matrix.hpp"
#include "relbound/rng.hpp"

using namespace relbound;

namespace {

HermitianMatrix hdiag(std::vector<double> v) {
  return HermitianMatrix(Matrix::diagonal(v));
}

}  // namespace

TEST_CASE("scaled identities and eigenbasis-diagonal transforms are admissible") {
  const HermitianMatrix a = hdiag({3, 1, 0});
  const SpectralDecomposition dec = hermitian_eig(a);
  CHECK(check_admissible(2.5 * Matrix::identity(3), dec).admissible);

  // D = V diag V* commutes with the range projector by construction.
  const Matrix d = dec.V *
                   Matrix::diagonal(std::vector<double>{2.0, 0.5, 3.0}) *
                   adjoint(dec.V);
  const CongruenceCheck check = check_admissible(d, dec);
  CHECK(check.admissible);
  CHECK(check.commute_residual < 1e-12);
}

TEST_CASE("full rank accepts any invertible transform; singular D is refused") {
  InstanceSpec spec;
  spec.n = 5;
  spec.rank = 5;
  spec.spectrum.kind = SpectrumSpec::Kind::Signed;
  spec.seed = 41;
  const SpectralDecomposition dec = hermitian_eig(gen_hermitian(spec));
  Rng rng(42);
  CHECK(check_admissible(gaussian_matrix(rng, 5, 5), dec).admissible);
  CHECK_THROWS_AS((void)check_admissible(Matrix(5, 5), dec), Error);
}

TEST_CASE("identity and scalar transforms leave k exactly invariant") {
  InstanceSpec spec;
  spec.n = 4;
  spec.rank = 3;
  spec.spectrum.kind = SpectrumSpec::Kind::Signed;
  spec.seed = 51;
  const HermitianMatrix a = gen_hermitian(spec);
  const HermitianMatrix e = gen_perturbation(a, 0.6, 52, /*with_kernel=*/true);

  const CongruenceCheck id = k_invariance(a, e, Matrix::identity(4));
  CHECK(id.invariance_gap < 1e-12);
  const CongruenceCheck scaled = k_invariance(a, e, 3.0 * Matrix::identity(4));
  CHECK(scaled.invariance_gap < 1e-10);
  CHECK(scaled.k_original == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("generated transforms are admissible and k-invariant") {
  for (std::uint64_t seed = 60; seed < 80; ++seed) {
    InstanceSpec spec;
    spec.n = 6;
    spec.rank = 4;
    spec.spectrum.kind = SpectrumSpec::Kind::LogUniform;
    spec.spectrum.lo = 0.1;
    spec.spectrum.hi = 10.0;
    spec.psd = true;
    spec.seed = seed;
    const HermitianMatrix a = gen_hermitian(spec);
    const HermitianMatrix e = gen_perturbation(a, 0.5, seed + 1, true);
    const SpectralDecomposition dec = hermitian_eig(a);
    const Matrix d = generate_admissible_D(dec, seed + 2, 1e3);
    const CongruenceCheck check = k_invariance(a, e, d);
    CHECK(check.admissible);
    CHECK(check.commute_residual <= 1e-7);
    CHECK(check.invariance_gap <= tol::invariance);
  }
}

TEST_CASE("non-admissible transforms break invariance and are gated") {
  InstanceSpec spec;
  spec.n = 6;
  spec.rank = 3;
  spec.spectrum.kind = SpectrumSpec::Kind::LogUniform;
  spec.psd = true;
  spec.spectrum.lo = 0.5;
  spec.spectrum.hi = 5.0;
  spec.seed = 71;
  const HermitianMatrix a = gen_hermitian(spec);
  const HermitianMatrix e = gen_perturbation(a, 0.5, 72, /*with_kernel=*/true);
  const SpectralDecomposition dec = hermitian_eig(a);

  Rng rng(73);
  const Matrix bad = gaussian_matrix(rng, 6, 6);
  CHECK_FALSE(check_admissible(bad, dec).admissible);
  CHECK_THROWS_AS((void)k_invariance(a, e, bad), Error);

  const double k = k_sqrt(a, e).value;
  const double k_raw = k_transformed_raw(a, e, bad);
  CHECK(std::abs(k - k_raw) / k > 1e-4);
}

TEST_CASE("transferred bounds: diagonal example and a random PSD pair") {
  // A = diag(1, 0), E = diag(0.1, 0), D = 2I: transformed matrix diag(4, 0),
  // k = 0.1, ceiling 4.4 and floor 3.6 around 4.4.
  const HermitianMatrix a = hdiag({1, 0});
  const HermitianMatrix e = hdiag({0.1, 0});
  const EigenBoundReport report =
      congruence_bounds(a, e, 2.0 * Matrix::identity(2));
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].lambda == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(report.entries[0].lower == doctest::Approx(3.6).epsilon(1e-12));
  CHECK(report.entries[0].upper == doctest::Approx(4.4).epsilon(1e-12));
  CHECK(report.k.value == doctest::Approx(0.1).epsilon(1e-12));

  InstanceSpec spec;
  spec.n = 5;
  spec.rank = 3;
  spec.spectrum.kind = SpectrumSpec::Kind::LogUniform;
  spec.psd = true;
  spec.seed = 81;
  const HermitianMatrix pa = gen_hermitian(spec);
  const HermitianMatrix pe = gen_perturbation(pa, 0.4, 82);
  const SpectralDecomposition dec = hermitian_eig(pa);
  const Matrix d = generate_admissible_D(dec, 83, 10.0);
  const EigenBoundReport rep = congruence_bounds(pa, pe, d);
  const SpectralDecomposition sum = hermitian_eig(
      HermitianMatrix(d * (pa.matrix() + pe.matrix()) * adjoint(d), 1e-8),
      Ordering::Decreasing);
  const double slack = 1e-8 * (1.0 + sum.norm());
  for (const auto& entry : rep.entries) {
    CHECK(sum.eigenvalues[entry.upper_index - 1] <= entry.upper + slack);
    CHECK(sum.eigenvalues[entry.index - 1] >= entry.lower - slack);
  }
}

TEST_CASE("transferred bounds require PSD inputs") {
  const HermitianMatrix a = hdiag({1, -1});
  const HermitianMatrix e = hdiag({0.1, 0});
  CHECK_THROWS_AS((void)congruence_bounds(a, e, Matrix::identity(2)), Error);
}
