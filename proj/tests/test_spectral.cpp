#include <gtest/gtest.h>

#include "nlsplane/errors.hpp"
#include "nlsplane/spectral.hpp"
#include "oracles.hpp"

using namespace nlsplane;

TEST(SobolevNorm, UnitShellHasWeightOne) {
  FourierField f(GridSpec(2, 3));
  f.set({1, 0, 0}, 0.1);
  EXPECT_NEAR(sobolev_norm(f, 2.0, true), 0.1, 1e-16);
}

TEST(SobolevNorm, SecondShellScalesBySquare) {
  FourierField f(GridSpec(2, 3));
  f.set({2, 0, 0}, 0.1);
  EXPECT_NEAR(sobolev_norm(f, 2.0, true), 0.4, 1e-15);
}

TEST(SobolevNorm, ZeroFieldAndZeroModeExclusion) {
  FourierField f(GridSpec(2, 3));
  EXPECT_EQ(sobolev_norm(f, 2.0, true), 0.0);
  f.set(kZeroMode, 3.0);
  EXPECT_EQ(sobolev_norm(f, 2.0, true), 0.0);
  EXPECT_NEAR(sobolev_norm(f, 2.0, false), 3.0, 1e-15);
  f.set({1, 1, 0}, 1.0);
  // (1 + |j|^2)^s = 3^2 for j = (1,1), s = 2.
  EXPECT_NEAR(sobolev_norm(f, 2.0, false), std::sqrt(9.0 + 9.0), 1e-14);
}

TEST(SobolevNorm, AbsolutelyHomogeneous) {
  const FourierField f = oracle::gaussian_field(GridSpec(2, 4), 1);
  const Complex c(-0.3, 1.7);
  for (bool exclude : {true, false}) {
    EXPECT_NEAR(sobolev_norm(c * f, 1.5, exclude), std::abs(c) * sobolev_norm(f, 1.5, exclude),
                1e-12 * sobolev_norm(f, 1.5, exclude));
  }
}

TEST(Conserved, PlaneWave) {
  FourierField f(GridSpec(2, 3));
  f.set({1, 0, 0}, 1.0);
  const auto c = conserved(f, 1.0);
  EXPECT_NEAR(c.l2sq, 1.0, 1e-15);
  EXPECT_NEAR(c.momentum[0], 1.0, 1e-15);
  EXPECT_NEAR(c.momentum[1], 0.0, 1e-15);
  EXPECT_NEAR(c.energy, 1.5, 1e-14);
}

TEST(Conserved, ZeroField) {
  const auto c = conserved(FourierField(GridSpec(2, 3)), 1.0);
  EXPECT_EQ(c.l2sq, 0.0);
  EXPECT_EQ(c.momentum[0], 0.0);
  EXPECT_EQ(c.momentum[1], 0.0);
  EXPECT_EQ(c.energy, 0.0);
}

TEST(Conserved, SymmetricPairHasNoMomentum) {
  FourierField f(GridSpec(2, 3));
  f.set({1, 0, 0}, 1.0 / std::sqrt(2.0));
  f.set({-1, 0, 0}, 1.0 / std::sqrt(2.0));
  const auto c = conserved(f, 1.0);
  EXPECT_NEAR(c.l2sq, 1.0, 1e-15);
  EXPECT_NEAR(c.momentum[0], 0.0, 1e-15);
  EXPECT_NEAR(c.momentum[1], 0.0, 1e-15);
}

TEST(Conserved, MassMatchesUnweightedNormAndEnergyMatchesOracle) {
  const FourierField f = oracle::gaussian_field(GridSpec(1, 4), 2, 0.3);
  const auto c = conserved(f, -1.0);
  const double n0 = sobolev_norm(f, 0.0, false);
  EXPECT_NEAR(c.l2sq, n0 * n0, 1e-14);
  double kinetic = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    kinetic += static_cast<double>(norm_sq(f.grid().mode(i))) * std::norm(f[i]);
  EXPECT_NEAR(c.energy, kinetic - 0.5 * oracle::convolution_quartic(f), 1e-12);
  EXPECT_NEAR(quartic_sum(f), oracle::convolution_quartic(f), 1e-12);
}

TEST(CubicTerm, SingleModeSelfInteraction) {
  FourierField f(GridSpec(2, 3, Mode{1, 1, 0}));
  const double rho = 0.7;
  f.set({1, 1, 0}, rho);
  const FourierField g = cubic_term(f, -1.0);
  FourierField expected(f.grid());
  expected.set({1, 1, 0}, -rho * rho * rho);
  EXPECT_LE(max_abs_diff(g, expected), 1e-15);
}

TEST(CubicTerm, ZeroField) {
  const FourierField g = cubic_term(FourierField(GridSpec(1, 4)), 1.0);
  EXPECT_EQ(g.max_abs(), 0.0);
}

TEST(CubicTerm, TwoCosineModes) {
  FourierField f(GridSpec(1, 3));
  const double c = 0.4;
  f.set({1, 0, 0}, c);
  f.set({-1, 0, 0}, c);
  const FourierField g = cubic_term(f, 1.0);
  EXPECT_NEAR(std::abs(g.at({3, 0, 0}) - c * c * c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.at({1, 0, 0}) - 3.0 * c * c * c), 0.0, 1e-15);
  // The K = 3 lattice keeps j = 3; the oracle enumeration is the reference.
  EXPECT_LE(max_abs_diff(g, oracle::convolution_cubic(f, 1.0)), 1e-15);
}

TEST(CubicTerm, MatchesTripleLoopOracle) {
  for (int K = 1; K <= 4; ++K) {
    for (unsigned seed : {1u, 2u, 3u}) {
      const FourierField f = oracle::gaussian_field(GridSpec(1, K), seed + 10u * K);
      const FourierField fast = cubic_term(f, -1.0);
      const FourierField slow = oracle::convolution_cubic(f, -1.0);
      EXPECT_LE(max_abs_diff(fast, slow), 1e-12 * slow.max_abs()) << "K=" << K;
    }
  }
  const FourierField f2 = oracle::gaussian_field(GridSpec(2, 2, Mode{2, -1, 0}), 9);
  EXPECT_LE(max_abs_diff(cubic_term(f2, 1.0), oracle::convolution_cubic(f2, 1.0)), 1e-12 * 50);
}

TEST(RandomPerturbation, ExactNormalization) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const FourierField p = random_perturbation(GridSpec(2, 6), 4.0, 0.05, seed);
    EXPECT_NEAR(sobolev_norm(p, 4.0, true), 0.05, 0.05 * 1e-14);
    EXPECT_EQ(p.at(kZeroMode), Complex{});
  }
}

TEST(RandomPerturbation, DeterministicInSeed) {
  const GridSpec g(2, 5);
  const FourierField a = random_perturbation(g, 2.0, 0.1, 7);
  const FourierField b = random_perturbation(g, 2.0, 0.1, 7);
  EXPECT_EQ(max_abs_diff(a, b), 0.0);
  const FourierField c = random_perturbation(g, 2.0, 0.1, 8);
  EXPECT_GT(max_abs_diff(a, c), 0.0);
}

TEST(RandomPerturbation, ModeSamplesDoNotDependOnLatticeSize) {
  // Before normalization each mode depends on (seed, j) only, so the ratio of
  // two coefficients is the same on nested lattices.
  const FourierField small = random_perturbation(GridSpec(2, 4), 2.0, 0.1, 3);
  const FourierField large = random_perturbation(GridSpec(2, 8), 2.0, 0.1, 3);
  const Mode a{1, 0, 0}, b{-3, 2, 0};
  const Complex ra = small.at(a) / small.at(b);
  const Complex rb = large.at(a) / large.at(b);
  EXPECT_LE(std::abs(ra - rb), 1e-12 * std::abs(ra));
}

TEST(RandomPerturbation, RejectsNonPositiveEps) {
  EXPECT_THROW(random_perturbation(GridSpec(1, 3), 1.0, 0.0, 1), InvalidArgument);
}
