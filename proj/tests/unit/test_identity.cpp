#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nitsche/identity.hpp"
#include "nitsche/nitsche_family.hpp"
#include "nitsche/random_maps.hpp"
#include "oracles.hpp"

using namespace nitsche;

namespace {

double rel_residual(const IdentityReport& r) { return std::abs(r.residual) / std::max(1.0, std::abs(r.lhs.total)); }

TEST(GSubstitute, CriticalMapGivesConstant) {
  const AnnulusMap h = critical_nitsche_map(3.0);
  for (double rho : {1.0, 1.7, 2.9}) {
    const GSubstitute g = g_substitute(h, std::polar(rho, 0.8));
    EXPECT_NEAR(std::abs(g.g - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g.g_z), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g.g_zbar), 0.0, 1e-15);
  }
}

TEST(GSubstitute, ConstantMap) {
  const GSubstitute g = g_substitute(AnnulusMap::constant(3.0, 1.0), std::polar(2.0, 0.4));
  EXPECT_NEAR(std::abs(g.g_z), 0.32, 1e-15);
  EXPECT_NEAR(std::abs(g.g_zbar), 0.08, 1e-15);
  EXPECT_NEAR(g.abs_g_z_polar, 0.32, 1e-15);
  EXPECT_NEAR(g.abs_g_zbar_polar, 0.08, 1e-15);
}

TEST(GSubstitute, IdentityMapIsRadial) {
  const GSubstitute g = g_substitute(AnnulusMap::identity(3.0), std::polar(1.5, 2.2));
  EXPECT_NEAR(g.g.real(), 2 * 2.25 / 3.25, 1e-15);
  EXPECT_NEAR(g.g.imag(), 0.0, 1e-15);
}

TEST(GSubstitute, PolarModuliAndFiniteDifferences) {
  Rng rng(51);
  for (int k = 0; k < 200; ++k) {
    const AnnulusMap h = random_map(rng, 3.0, {6, 2.0, true});
    const cplx z = std::polar(1.0 + 0.01 * k, 0.3 * k);
    const GSubstitute g = g_substitute(h, z);
    const double s = std::max(1.0, std::abs(g.g_z) + std::abs(g.g_zbar));
    EXPECT_NEAR(std::abs(g.g_z), g.abs_g_z_polar, 1e-12 * s);
    EXPECT_NEAR(std::abs(g.g_zbar), g.abs_g_zbar_polar, 1e-12 * s);
    if (k % 10 == 0) {
      auto G = [&](cplx x) { return 2.0 * std::conj(x) * oracle::h(h, x) / (std::norm(x) + 1.0); };
      const oracle::Wirtinger w = oracle::wirtinger(G, z);
      EXPECT_LE(std::abs(w.dz - g.g_z), 1e-8 * s);
      EXPECT_LE(std::abs(w.dzbar - g.g_zbar), 1e-8 * s);
    }
  }
  EXPECT_THROW(g_substitute(AnnulusMap::identity(2.0), 3.0), DomainError);
}

TEST(Weights, Signs) {
  for (double R : {1.5, 2.0, std::numbers::e, 3.0, 6.0}) {
    bool w2_nonneg = true;
    for (int i = 1; i < 1000; ++i) {
      const double rho = 1.0 + (R - 1.0) * i / 1000.0;
      EXPECT_GT(identity_weight1(R, rho), 0.0);
      if (identity_weight2(R, rho) < -1e-15) w2_nonneg = false;
    }
    EXPECT_EQ(w2_nonneg, R <= std::numbers::e) << R;
  }
}

TEST(Lhs, Examples) {
  const IdentityLhs one = identity_lhs(AnnulusMap::constant(2.0, 1.0), 2.0);
  EXPECT_NEAR(one.total, -0.9 + 3 * std::log(2.0), 1e-14);
  EXPECT_NEAR(one.total, 1.1794415, 5e-8);
  EXPECT_NEAR(identity_lhs(critical_nitsche_map(2.0), 2.0).total, 0.0, 1e-14);
  const IdentityLhs z = identity_lhs(AnnulusMap::identity(2.0), 2.0);
  EXPECT_NEAR(z.total, 0.9, 1e-14);
  EXPECT_NEAR(z.term1, 6.4, 1e-14);
  EXPECT_NEAR(z.term2, -2.5, 1e-14);
  EXPECT_NEAR(z.term3, -3.0, 1e-14);
  EXPECT_NEAR(z.term4, 0.0, 1e-14);
  EXPECT_THROW(identity_lhs(AnnulusMap::identity(2.0), 1.0), DomainError);
  EXPECT_THROW(identity_lhs(AnnulusMap::identity(2.0), 2.5), DomainError);
}

TEST(Lhs, MatchesBruteForce) {
  Rng rng(52);
  for (int k = 0; k < 10; ++k) {
    const AnnulusMap h = random_map(rng, 2.5, {5, 2.0, true});
    const double lhs = identity_lhs(h, 2.5).total;
    EXPECT_NEAR(lhs, oracle::identity_lhs(h, 2.5), 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Rhs, Examples) {
  const IdentityRhs c = identity_rhs(critical_nitsche_map(2.0), 2.0);
  EXPECT_NEAR(c.total, 0.0, 1e-14);
  const IdentityRhs one = identity_rhs(AnnulusMap::constant(2.0, 1.0), 2.0);
  EXPECT_TRUE(one.converged);
  EXPECT_NEAR(one.total, 1.1794415, 1e-7);
  EXPECT_NEAR(identity_rhs(AnnulusMap::identity(2.0), 2.0).total, 0.9, 1e-8);
  EXPECT_NEAR(one.int1 + one.int2, one.total, 1e-15);
}

TEST(Rhs, MatchesBruteForce) {
  Rng rng(53);
  for (int k = 0; k < 4; ++k) {
    const AnnulusMap h = random_map(rng, 2.0, {4, 2.0, true});
    const double rhs = identity_rhs(h, 2.0).total;
    EXPECT_NEAR(rhs, oracle::identity_rhs(h, 2.0, 100, 40), 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Identity, Holds) {
  EXPECT_LE(rel_residual(identity_report(AnnulusMap::constant(2.0, 1.0), 2.0)), 1e-8);
  EXPECT_LE(rel_residual(identity_report(AnnulusMap::identity(2.0), 2.0)), 1e-8);
  Rng rng(54);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double R = 1.0 + 2.0 * (1.0 - u(rng));
    const AnnulusMap h = random_map(rng, R, {1 + k % 8, 2.0, true});
    EXPECT_LE(rel_residual(identity_report(h, R)), 1e-8) << k;
  }
}

TEST(Identity, HoldsBeyondE) {
  Rng rng(55);
  for (int k = 0; k < 10; ++k) {
    const AnnulusMap h = random_map(rng, 6.0, {4, 2.0, true});
    EXPECT_LE(rel_residual(identity_report(h, 4.0 + 0.2 * k)), 1e-8);
  }
}

TEST(Identity, ExplicitQuadOrders) {
  const AnnulusMap h = nitsche_map({0.3, 2.0});
  const IdentityReport r = identity_report(h, 2.0, {64, 8});
  EXPECT_EQ(r.rhs.M, 64);
  EXPECT_LE(rel_residual(r), 1e-8);
}

TEST(Identity, IntegrandsNonnegativeForThinAnnuli) {
  Rng rng(56);
  for (int k = 0; k < 10; ++k) {
    const AnnulusMap h = random_map(rng, std::numbers::e, {4, 2.0, true});
    const IdentityRhs r = identity_rhs(h, 2.5);
    EXPECT_GE(r.int1, 0.0);
    EXPECT_GE(r.int2, 0.0);
  }
}

TEST(ThinBound, Examples) {
  EXPECT_NEAR(thin_annulus_bound(critical_nitsche_map(3.0), 2.0).value, 0.0, 1e-15);
  EXPECT_TRUE(thin_annulus_bound(critical_nitsche_map(3.0), 2.0).qualifies());
  EXPECT_NEAR(thin_annulus_bound(AnnulusMap::identity(3.0), 2.0).value, 0.75, 1e-15);
  const double e = std::numbers::e;
  EXPECT_NEAR(thin_annulus_bound(nitsche_map({1.0 / 3.0, 3.0}), e).value, (e - 1 / e) / 6.0, 1e-14);
  const ThinBound far = thin_annulus_bound(critical_nitsche_map(4.0), 3.5);
  EXPECT_FALSE(far.sigma_in_range);
  // the thin-annulus hypotheses do not involve the mean Jacobian
  const ThinBound ex = thin_annulus_bound(example_51_map(0.5, 2.0), 2.0);
  EXPECT_TRUE(ex.qualifies());
  EXPECT_GE(ex.value, 0.0);
}

TEST(ThinBound, NonnegativeForQualifyingMaps) {
  Rng rng(57);
  int used = 0;
  for (int k = 0; k < 300; ++k) {
    const AnnulusMap h = random_unimodular_trace_map(rng, std::numbers::e, 4, 2.5);
    for (double s : {1.2, 1.8, 2.4, std::numbers::e}) {
      const ThinBound b = thin_annulus_bound(h, s);
      if (!b.qualifies()) continue;
      ++used;
      EXPECT_GE(b.value, -1e-10) << k;
    }
  }
  EXPECT_GT(used, 20);
}

TEST(Uniqueness, ZeroLhsForcesCriticalFamily) {
  // rotations of ħ: lhs vanishes and the coefficient distance is 0
  for (double a : {0.0, 1.0, 2.0}) {
    const AnnulusMap h = critical_nitsche_map(std::numbers::e).rotated(a);
    EXPECT_NEAR(identity_lhs(h, 2.0).total, 0.0, 1e-13);
    EXPECT_LE(distance_to_critical_family(h), 1e-12);
  }
  // maps with unimodular trace: lhs small only near the family
  Rng rng(58);
  for (int k = 0; k < 200; ++k) {
    const AnnulusMap h = random_unimodular_trace_map(rng, std::numbers::e, 3, 3.0);
    const ThinBound b = thin_annulus_bound(h, 2.0);
    if (!b.qualifies()) continue;
    const double lhs = identity_lhs(h, 2.0).total;
    if (std::abs(lhs) < 1e-10) EXPECT_LE(distance_to_critical_family(h), 1e-6);
    else EXPECT_GT(distance_to_critical_family(h), 0.0);
  }
}

}  // namespace
