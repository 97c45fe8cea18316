#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "relbound/bounds.hpp"
#include "relbound/eig.hpp"
#include "relbound/generate.hpp"
#include "relbound/matrix.hpp"
#include "relbound/rng.hpp"
#include "relbound/svd.hpp"

using namespace relbound;

namespace {

HermitianMatrix hdiag(std::vector<double> v) {
  return HermitianMatrix(Matrix::diagonal(v));
}

}  // namespace

TEST_CASE("k on scaled identities and diagonal matrices") {
  const KEstimate k1 = k_sqrt(hdiag({1, 1, 1}), hdiag({0.25, 0.25, 0.25}));
  CHECK(k1.value == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(k1.admissible);

  const KEstimate k2 = k_sqrt(hdiag({4, 1, 0}), hdiag({0.4, 0.1, 0}));
  CHECK(k2.value == doctest::Approx(0.1).epsilon(1e-13));

  const KEstimate kp = k_pinv(hdiag({4, 1, 0}), hdiag({0.4, 0.1, 0}), PinvSide::Left);
  CHECK(kp.value == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(kp.formula == KFormula::PinvLeft);
}

TEST_CASE("two-branch evaluation of k agrees on an indefinite rank-3 input") {
  InstanceSpec spec;
  spec.n = 5;
  spec.rank = 3;
  spec.spectrum.kind = SpectrumSpec::Kind::Signed;
  spec.spectrum.lo = 0.5;
  spec.spectrum.hi = 50.0;
  spec.seed = 21;
  const HermitianMatrix a = gen_hermitian(spec);
  const HermitianMatrix e = gen_perturbation(a, 0.7, 22);

  const KEstimate ks = k_sqrt(a, e);
  const SpectralDecomposition dec = hermitian_eig(a);
  const Matrix b = pinv_sqrt(dec);  // principal branch, complex for lambda < 0
  const double kc = spectral_norm(b * e.matrix() * b);
  CHECK(std::abs(kc - ks.value) < 1e-10 * ks.value);
}

TEST_CASE("k ordering across formulas") {
  InstanceSpec spec;
  spec.n = 6;
  spec.rank = 4;
  spec.spectrum.kind = SpectrumSpec::Kind::Signed;
  spec.seed = 5;
  const HermitianMatrix a = gen_hermitian(spec);
  Rng rng(55);
  Matrix g = gaussian_hermitian(rng, 6);
  g *= 0.1;
  const HermitianMatrix e(g);

  const KEstimate ks = k_sqrt(a, e);
  const KEstimate kl = k_pinv(a, e, PinvSide::Left);
  const KEstimate kr = k_pinv(a, e, PinvSide::Right);
  CHECK(ks.value <= kl.value * (1 + 1e-12) + 1e-14);
  CHECK(std::abs(kl.value - kr.value) <= 1e-12 * kl.value);
}

TEST_CASE("general factorization specializations on a diagonal example") {
  const HermitianMatrix a = hdiag({4, 1, 0});
  const HermitianMatrix e = hdiag({0.4, 0.1, 0});
  const Matrix half = Matrix::diagonal(std::vector<double>{2, 1, 0});

  const KEstimate kg = k_general(a, e, half, half);
  CHECK(kg.value == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(kg.formula == KFormula::GeneralFactor);

  const KEstimate ka = k_general(a, e, a.matrix(), Matrix::identity(3));
  CHECK(ka.value == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("invalid factorizations are rejected") {
  const HermitianMatrix a = hdiag({4, 1, 0});
  const HermitianMatrix e = hdiag({0.4, 0.1, 0});
  // A1 A2 = 1.01 A: off by 1e-2 relative, far beyond the tolerance.
  CHECK_THROWS_AS(
      (void)k_general(a, e, 1.01 * a.matrix(), Matrix::identity(3)), Error);
  // Commuting requirement: A1 A2 = A but A2 A1 != A.
  Matrix a1(2, 2), a2(2, 2);
  a1(0, 1) = 1.0;          // nilpotent
  a2(1, 0) = 1.0;
  const HermitianMatrix b(a1 * a2, 1e-10);  // diag(1, 0)
  CHECK_THROWS_AS((void)k_general(b, hdiag({0.1, 0}), a1, a2), Error);
}

TEST_CASE("polar-validated factorization accepts the twisted square-root pair") {
  InstanceSpec spec;
  spec.n = 5;
  spec.rank = 4;
  spec.spectrum.kind = SpectrumSpec::Kind::Explicit;
  spec.spectrum.values = {8.0, 3.0, -2.0, -0.5};
  spec.seed = 9;
  const HermitianMatrix a = gen_hermitian(spec);
  const HermitianMatrix e = gen_perturbation(a, 0.4, 10);

  const SpectralDecomposition dec = hermitian_eig(a);
  const ThinSpectral thin = thin_spectral(dec);
  std::vector<double> abs_half(thin.Dr.size());
  for (std::size_t i = 0; i < abs_half.size(); ++i)
    abs_half[i] = std::sqrt(std::abs(thin.Dr[i]));
  const Matrix ph = thin.Vr * Matrix::diagonal(abs_half) * adjoint(thin.Vr);
  Rng rng(99);
  const Matrix u = haar_unitary(rng, 5);

  // (P^{1/2} U)(U* P^{1/2}) = P != A, so the direct check refuses ...
  CHECK_THROWS_AS((void)k_general(a, e, ph * u, adjoint(u) * ph), Error);
  // ... while the polar-factor route accepts and reproduces k.
  const KEstimate kp = k_general_polar(a, e, ph * u, adjoint(u) * ph);
  const KEstimate ks = k_sqrt(a, e);
  CHECK(std::abs(kp.value - ks.value) < 1e-10 * ks.value);
  CHECK(kp.formula == KFormula::GeneralFactor);
}

TEST_CASE("eigen bound entries are exact interval arithmetic") {
  const HermitianMatrix a = hdiag({4, 1, 0});
  const HermitianMatrix e = hdiag({0.4, 0.1, 0});
  const EigenBoundReport report = eigen_bounds(a, e, k_sqrt(a, e));
  REQUIRE(report.r == 2);
  CHECK(report.n == 3);
  CHECK(report.entries[0].lambda == doctest::Approx(4.0));
  CHECK(report.entries[0].lower == doctest::Approx(3.6));
  CHECK(report.entries[0].upper == doctest::Approx(4.4));
  CHECK(report.entries[0].upper_index == 2);  // n - r + i = 3 - 2 + 1
  CHECK(report.entries[1].upper_index == 3);

  const Verdict verdict = verify_eigen_bounds(a, e, report);
  CHECK(verdict.holds);
}

TEST_CASE("the k <= 1 gate rejects, psd mode relaxes") {
  const HermitianMatrix a = hdiag({1.0, 0.0});
  const HermitianMatrix e = hdiag({2.0, 0.0});  // k = 2
  const KEstimate k = k_sqrt(a, e);
  CHECK(k.value == doctest::Approx(2.0));
  CHECK_FALSE(k.admissible);
  CHECK_THROWS_AS((void)eigen_bounds(a, e, k, false), Error);

  // Both PSD: any k is fine and the bounds hold.
  const EigenBoundReport report = eigen_bounds(a, e, k, true);
  CHECK(report.psd_mode);
  CHECK(verify_eigen_bounds(a, e, report).holds);

  // psd mode requires actual positive semi-definiteness.
  const HermitianMatrix neg = hdiag({-1.0, 0.0});
  CHECK_THROWS_AS((void)eigen_bounds(neg, e, k_sqrt(neg, e), true), Error);
}

TEST_CASE("verification catches a broken report") {
  const HermitianMatrix a = hdiag({4, 1, 0});
  const HermitianMatrix e = hdiag({0.4, 0.1, 0});
  EigenBoundReport report = eigen_bounds(a, e, k_sqrt(a, e));
  report.entries[0].upper = -100.0;  // impossible ceiling
  const Verdict verdict = verify_eigen_bounds(a, e, report);
  CHECK_FALSE(verdict.holds);
  CHECK(verdict.worst_violation < 0.0);
}

TEST_CASE("dimension mismatches are reported") {
  CHECK_THROWS_AS((void)k_sqrt(hdiag({1, 1}), hdiag({1, 1, 1})), Error);
}
