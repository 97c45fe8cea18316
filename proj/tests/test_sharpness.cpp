#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "relbound/bounds.hpp"
#include "relbound/eig.hpp"
#include "relbound/generate.hpp"
#include "relbound/matrix.hpp"
#include "relbound/rng.hpp"
#include "relbound/sharpness.hpp"

using namespace relbound;

namespace {

HermitianMatrix hdiag(std::vector<double> v) {
  return HermitianMatrix(Matrix::diagonal(v));
}

}  // namespace

TEST_CASE("classical intervals: degenerate and diagonal cases") {
  const HermitianMatrix a = hdiag({4, 1, 0});
  const auto zero = weyl_bound(a, hdiag({0, 0, 0}));
  for (const auto& iv : zero) {
    CHECK(iv.lower == doctest::Approx(iv.lambda));
    CHECK(iv.upper == doctest::Approx(iv.lambda));
  }
  const auto ivs = weyl_bound(a, hdiag({0.4, 0.1, 0}));
  REQUIRE(ivs.size() == 3);
  for (const auto& iv : ivs)
    CHECK(iv.upper - iv.lambda == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(ivs[0].lambda == doctest::Approx(4.0));  // decreasing order
  CHECK(ivs[2].lambda == doctest::Approx(0.0));
}

TEST_CASE("classical intervals contain the perturbed spectrum") {
  InstanceSpec spec;
  spec.n = 7;
  spec.rank = 5;
  spec.spectrum.kind = SpectrumSpec::Kind::Signed;
  spec.seed = 31;
  const HermitianMatrix a = gen_hermitian(spec);
  Rng rng(32);
  Matrix g = gaussian_hermitian(rng, 7);
  g *= 0.05;
  const HermitianMatrix e(g);
  const auto ivs = weyl_bound(a, e);
  const SpectralDecomposition sum =
      hermitian_eig(HermitianMatrix(a.matrix() + e.matrix()), Ordering::Decreasing);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(sum.eigenvalues[i] >= ivs[i].lower - 1e-12);
    CHECK(sum.eigenvalues[i] <= ivs[i].upper + 1e-12);
  }
}

TEST_CASE("full-rank condition on a diagonal example") {
  const HermitianMatrix a = hdiag({100, 1});
  const HermitianMatrix e = hdiag({0.5, 0.5});
  CHECK_FALSE(condition_28(a, e, 1));  // 100 * 0.5 > ||E||
  CHECK(condition_28(a, e, 2));        // min-magnitude index always qualifies
  // Rank-deficient input must be refused.
  CHECK_THROWS_AS((void)condition_28(hdiag({1, 0}), e, 1), Error);
}

TEST_CASE("condition truth implies the guaranteed inequality") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    InstanceSpec spec;
    spec.n = 6;
    spec.rank = (seed % 2) ? 6 : 4;
    spec.spectrum.kind = SpectrumSpec::Kind::Signed;
    spec.spectrum.lo = 0.5;
    spec.spectrum.hi = 20.0;
    spec.seed = seed;
    const HermitianMatrix a = gen_hermitian(spec);
    Rng rng(seed + 1);
    Matrix g = gaussian_hermitian(rng, 6);
    g *= 0.2;
    const HermitianMatrix e(g);
    const double norm_e = hermitian_eig(e).norm();
    const double norm_a = hermitian_eig(a).norm();
    const double slack = 1e-10 * std::max(norm_a, norm_e);
    for (const auto& v : sharpness_report(a, e)) {
      if (!v.condition_met) continue;
      CHECK(v.sharper);
      CHECK(v.relative_radius <= v.weyl_radius + slack);
    }
  }
}

TEST_CASE("a sharper index always exists at full rank") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    InstanceSpec spec;
    spec.n = 5;
    spec.rank = 5;
    spec.spectrum.kind = SpectrumSpec::Kind::Signed;
    spec.seed = seed;
    const HermitianMatrix a = gen_hermitian(spec);
    Rng rng(seed + 7);
    Matrix g = gaussian_hermitian(rng, 5);
    g *= 0.5;
    const HermitianMatrix e(g);
    const std::size_t idx = exists_sharper_index(a, e);
    CHECK(condition_28(a, e, idx));
  }
}

TEST_CASE("multiplicity of the smallest eigenvalue certifies the condition") {
  // n = 6, r = 4, smallest nonzero eigenvalue 1.5 with multiplicity 3 = n-r+1.
  InstanceSpec spec;
  spec.n = 6;
  spec.rank = 4;
  spec.spectrum.kind = SpectrumSpec::Kind::Explicit;
  spec.spectrum.values = {1.5, 1.5, 1.5, -12.0};
  spec.seed = 77;
  const HermitianMatrix a = gen_hermitian(spec);
  const auto idx = multiplicity_guarantee(a);
  REQUIRE(idx.has_value());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(900 + seed);
    Matrix g = gaussian_hermitian(rng, 6);
    g *= std::pow(10.0, rng.uniform(-1.0, 1.0)) / frobenius_norm(g);
    CHECK(condition_32(a, HermitianMatrix(g), *idx));
  }

  // Without the multiplicity there is no certificate.
  spec.spectrum.values = {1.5, 2.5, 3.5, -12.0};
  CHECK_FALSE(multiplicity_guarantee(gen_hermitian(spec)).has_value());
}

TEST_CASE("index bounds are validated") {
  const HermitianMatrix a = hdiag({4, 1, 0});
  const HermitianMatrix e = hdiag({0.1, 0.1, 0});
  CHECK_THROWS_AS((void)condition_32(a, e, 0), Error);
  CHECK_THROWS_AS((void)condition_32(a, e, 3), Error);  // r = 2
}
