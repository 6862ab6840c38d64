#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "torusns/spectral_field.hpp"

namespace torusns {
namespace {

using testing::Rng;

LatticePtr ball(int r) { return Lattice::make({r, TruncationRule::euclidean_ball}); }

// Unit vector orthogonal to k.
Vec3c unit_perp(const WaveVector& k) {
  Vec3c e = testing::strip_parallel(k, Vec3c{{1.0, 0.3, -0.7}});
  if (e.magnitude() < 1e-8) e = testing::strip_parallel(k, Vec3c{{0.0, 1.0, 0.0}});
  return e * (1.0 / e.magnitude());
}

TEST(PhiNorm, ZeroFieldIsZero) { EXPECT_EQ(phi_norm(SpectralField(ball(3)), 2.25), 0.0); }

TEST(PhiNorm, SaturatingFieldHasNormOne) {
  const auto lat = ball(3);
  SpectralField f(lat);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = unit_perp(lat->site(i)) * std::pow(lat->norms()[i], -2.25);
  EXPECT_NEAR(phi_norm(f, 2.25), 1.0, 1e-14);
}

TEST(PhiNorm, SingleSite) {
  SpectralField f(ball(2));
  f.set({1, 1, 1}, Vec3c{{2.0, 0.0, 0.0}});
  EXPECT_NEAR(phi_norm(f, 2.25), 2.0 * std::pow(3.0, 1.125), 1e-12);
  EXPECT_NEAR(phi_norm(f, 2.25), 6.8832, 1e-4);
}

TEST(FmcNorm, ZeroFieldIsZero) { EXPECT_EQ(fmc_norm(SpectralField(ball(3)), 2, 0.5, 3.5), 0.0); }

TEST(FmcNorm, SaturatingFieldHasNormOne) {
  const auto lat = ball(3);
  const int m = 3;
  const double c = 0.5;
  const double beta = 3.5;
  SpectralField f(lat);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = lat->norms()[i];
    f[i] = unit_perp(lat->site(i)) * (std::pow(r, -beta) * std::exp(-c * std::sqrt(double(m)) * r));
  }
  EXPECT_NEAR(fmc_norm(f, m, c, beta), 1.0, 1e-13);
}

TEST(FmcNorm, SingleSite) {
  SpectralField f(ball(2));
  f.set({1, 0, 0}, Vec3c{{0.0, 1.0, 0.0}});
  EXPECT_NEAR(fmc_norm(f, 4, 0.5, 3.5), std::exp(1.0), 1e-14);
}

TEST(HeatMultiply, Examples) {
  Rng rng(1);
  const auto lat = ball(3);
  const SpectralField f = testing::random_field(lat, rng);
  EXPECT_EQ(heat_multiply(f, 0.0), f);

  SpectralField single(lat);
  single.set({1, 0, 0}, Vec3c{{0.0, 2.0, 0.0}});
  EXPECT_NEAR(heat_multiply(single, 1.0).at({1, 0, 0})[1].real(), 2.0 * std::exp(-1.0), 1e-15);

  SpectralField diag(lat);
  diag.set({1, 1, 1}, Vec3c{{1.0, -1.0, 0.0}});
  const double factor = heat_multiply(diag, 0.5).at({1, 1, 1})[0].real();
  EXPECT_NEAR(factor, std::exp(-1.5), 1e-15);
  EXPECT_NEAR(factor, 0.22313, 1e-5);
}

TEST(HeatMultiply, RejectsNegativeTime) {
  EXPECT_THROW(heat_multiply(SpectralField(ball(1)), -1e-3), std::invalid_argument);
}

TEST(HeatMultiply, UnderflowRemovesEntries) {
  SpectralField f(ball(4));
  f.set({4, 0, 0}, Vec3c{{0.0, 1.0, 0.0}});
  f.set({1, 0, 0}, Vec3c{{0.0, 1.0, 0.0}});
  // exp(-50 * 16) < 1e-300 <= exp(-50).
  const SpectralField out = heat_multiply(f, 50.0);
  EXPECT_TRUE(out.at({4, 0, 0}).is_zero());
  EXPECT_FALSE(out.at({1, 0, 0}).is_zero());
  EXPECT_EQ(out.support_size(), 1u);
}

TEST(HeatMultiply, SemigroupLaw) {
  Rng rng(2);
  const auto lat = ball(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralField f = testing::random_field(lat, rng);
    const double s = rng.uniform(0.0, 2.0);
    const double t = rng.uniform(0.0, 2.0);
    const SpectralField lhs = heat_multiply(heat_multiply(f, s), t);
    const SpectralField rhs = heat_multiply(f, s + t);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double scale = rhs[i].magnitude();
      EXPECT_LE((lhs[i] - rhs[i]).magnitude(), 1e-14 * scale + 1e-300);
    }
  }
}

TEST(Norms, HeatFlowContractsPhiNorm) {
  Rng rng(3);
  const auto lat = ball(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralField f = testing::random_field(lat, rng);
    const double t = rng.uniform(0.0, 3.0);
    EXPECT_LE(phi_norm(heat_multiply(f, t), 2.25), phi_norm(f, 2.25));
  }
}

TEST(Norms, HomogeneousAndSubadditive) {
  Rng rng(4);
  const auto lat = ball(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralField f = testing::random_field(lat, rng);
    const SpectralField g = testing::random_field(lat, rng, 2.0, 0.5);
    const double s = rng.uniform(-5.0, 5.0);
    const int m = rng.integer(1, 10);
    const double c = rng.uniform(0.1, 1.0);

    EXPECT_NEAR(phi_norm(f * s, 2.25), std::abs(s) * phi_norm(f, 2.25), 1e-12 * phi_norm(f, 2.25) * std::abs(s));
    EXPECT_NEAR(fmc_norm(f * s, m, c, 3.5), std::abs(s) * fmc_norm(f, m, c, 3.5),
                1e-12 * fmc_norm(f, m, c, 3.5) * std::abs(s));
    EXPECT_LE(phi_norm(f + g, 2.25), (phi_norm(f, 2.25) + phi_norm(g, 2.25)) * (1 + 1e-14));
    EXPECT_LE(fmc_norm(f + g, m, c, 3.5), (fmc_norm(f, m, c, 3.5) + fmc_norm(g, m, c, 3.5)) * (1 + 1e-14));
  }
}

TEST(Norms, FmcMonotoneInEachParameter) {
  Rng rng(5);
  const auto lat = ball(3);
  for (int trial = 0; trial < 30; ++trial) {
    const SpectralField f = testing::random_field(lat, rng, 1.0, 0.3);
    if (f.is_zero()) continue;
    const int m = rng.integer(1, 10);
    const double c = rng.uniform(0.1, 1.0);
    const double beta = rng.uniform(3.01, 5.0);
    const double base = fmc_norm(f, m, c, beta);
    EXPECT_LE(base, fmc_norm(f, m + 1, c, beta));
    EXPECT_LE(base, fmc_norm(f, m, c + 0.1, beta));
    EXPECT_LE(base, fmc_norm(f, m, c, beta + 0.1));
  }
}

TEST(SpectralField, SupportAndZeroMode) {
  SpectralField f(ball(2));
  EXPECT_TRUE(f.is_zero());
  EXPECT_THROW(f.set({0, 0, 0}, Vec3c{{1.0, 0.0, 0.0}}), std::out_of_range);
  EXPECT_TRUE(f.at({0, 0, 0}).is_zero());
  f.set({0, 2, 0}, Vec3c{{1.0, 0.0, 0.0}});
  EXPECT_EQ(f.support_size(), 1u);
  EXPECT_THROW(f += SpectralField(ball(3)), std::invalid_argument);
}

TEST(SpectralField, DivergenceAndRealityChecks) {
  Rng rng(6);
  const auto lat = ball(2);
  SpectralField f = testing::random_field(lat, rng);
  EXPECT_TRUE(is_divergence_free(f, 1e-12));
  f.set({1, 0, 0}, Vec3c{{1.0, 0.0, 0.0}});
  EXPECT_FALSE(is_divergence_free(f, 1e-12));

  SpectralField r(lat);
  r.set({1, 1, 0}, Vec3c{{Complex(0, 1), 0.0, 0.0}});
  EXPECT_GT(reality_defect(r), 0.0);
  r.set({-1, -1, 0}, Vec3c{{Complex(0, -1), 0.0, 0.0}});
  EXPECT_EQ(reality_defect(r), 0.0);
}

}  // namespace
}  // namespace torusns
