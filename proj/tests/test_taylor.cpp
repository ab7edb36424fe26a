#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "nlsplane/errors.hpp"
#include "nlsplane/taylor.hpp"

using namespace nlsplane;

namespace {

using Multiset = std::vector<Mode>;

// Expands every group of the reduced Hamiltonian term by term over the modes
// of the target monomial and adds up the contributions that land on it. Only
// target modes can contribute, so the enumeration is exhaustive.
double brute_force_total(Multiset k, Multiset l, double rho, double lambda) {
  std::sort(k.begin(), k.end());
  std::sort(l.begin(), l.end());
  std::vector<Mode> S(k.begin(), k.end());
  S.insert(S.end(), l.begin(), l.end());
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  const double sigma = rho * rho;
  const std::size_t deg = k.size() + l.size();
  double total = 0.0;

  auto hit = [&](Multiset a, Multiset b, double c) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == k && b == l) total += c;
  };

  if (deg == 0) total += lambda * sigma * sigma;
  if (deg == 2) {
    for (const Mode& j : S) {
      hit({j}, {j}, static_cast<double>(norm_sq(j)) + lambda * sigma);
      hit({j, -j}, {}, 0.5 * lambda * sigma);
      hit({}, {j, -j}, 0.5 * lambda * sigma);
    }
  }
  if (deg == 4) {
    for (const Mode& a : S)
      for (const Mode& b : S)
        for (const Mode& c : S)
          for (const Mode& d : S) {
            if (a + b == c + d) hit({a, b}, {c, d}, 0.5 * lambda);
          }
    for (const Mode& j : S)
      for (const Mode& m : S) {
        hit({j, m}, {j, m}, -1.5 * lambda);
        hit({j, -j, m}, {m}, -0.5 * lambda);
        hit({m}, {j, -j, m}, -0.5 * lambda);
      }
  }
  if (deg % 2 == 1) {
    const int kk = static_cast<int>(deg - 3) / 2;
    double binom = 1.0;
    for (int i = 0; i < kk; ++i) binom *= (0.5 - i) / (i + 1);
    const double coef = lambda * rho * binom * std::pow(-1.0 / sigma, kk);
    // All kk-tuples of mass factors z_u conj(z_u).
    std::vector<std::size_t> idx(static_cast<std::size_t>(kk), 0);
    while (true) {
      Multiset mass;
      for (auto i : idx) mass.push_back(S[i]);
      for (const Mode& a : S)
        for (const Mode& b : S)
          for (const Mode& c : S) {
            Multiset za{a, b}, zb{c};
            Multiset wa{a}, wb{b, c};
            za.insert(za.end(), mass.begin(), mass.end());
            zb.insert(zb.end(), mass.begin(), mass.end());
            wa.insert(wa.end(), mass.begin(), mass.end());
            wb.insert(wb.end(), mass.begin(), mass.end());
            if (a + b == c) hit(za, zb, coef);
            if (a == b + c) hit(wa, wb, coef);
          }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == S.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return total;
}

double orderings(Multiset ms) {
  std::sort(ms.begin(), ms.end());
  double r = std::tgamma(static_cast<double>(ms.size()) + 1.0);
  for (std::size_t i = 0; i < ms.size();) {
    std::size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    r /= std::tgamma(static_cast<double>(j - i) + 1.0);
    i = j;
  }
  return r;
}

double oracle_coefficient(const Multiset& k, const Multiset& l, double rho, double lambda) {
  return brute_force_total(k, l, rho, lambda) / (orderings(k) * orderings(l));
}

}  // namespace

TEST(TaylorCoefficient, DiagonalQuadratic) {
  const Mode j{2, -1, 0};
  const auto c = taylor_coefficient({{j}, {j}}, 0.8, -1.0);
  EXPECT_NEAR(c.real(), 5.0 - 0.64, 1e-15);
  EXPECT_EQ(c.imag(), 0.0);
}

TEST(TaylorCoefficient, PairQuadratic) {
  const Mode j{1, 3, 0};
  EXPECT_NEAR(taylor_coefficient({{j, -j}, {}}, 0.8, 1.0).real(), 0.32, 1e-15);
  EXPECT_NEAR(taylor_coefficient({{}, {j, -j}}, 0.8, 1.0).real(), 0.32, 1e-15);
}

TEST(TaylorCoefficient, NonzeroMomentumVanishes) {
  EXPECT_EQ(taylor_coefficient({{{1, 0, 0}}, {{0, 1, 0}}}, 1.0, 1.0), std::complex<double>{});
  EXPECT_EQ(taylor_coefficient({{{1, 0, 0}, {1, 0, 0}}, {{1, 1, 0}}}, 1.0, 1.0),
            std::complex<double>{});
}

TEST(TaylorCoefficient, OrderCapAndInvalidEntries) {
  const Mode v{1, 0, 0};
  EXPECT_THROW(taylor_coefficient({{v, v, v, v}, {v, v, v}}, 1.0, 1.0), OrderCap);
  EXPECT_NO_THROW(taylor_coefficient({{v, v, v}, {v, v, v}}, 1.0, 1.0));
  EXPECT_THROW(taylor_coefficient({{kZeroMode}, {kZeroMode}}, 1.0, 1.0), InvalidArgument);
}

TEST(TaylorCoefficient, EvenOrderSixIsZero) {
  const Mode v{1, 0, 0}, w{0, 1, 0};
  EXPECT_EQ(taylor_coefficient({{v, v, w}, {v, v, w}}, 1.0, 1.0).real(), 0.0);
}

TEST(TaylorCoefficient, MatchesSymbolicExpansion) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coord(-2, 2);
  auto draw = [&] {
    Mode v;
    do {
      v = {coord(rng), coord(rng), 0};
    } while (v == kZeroMode);
    return v;
  };
  int checked = 0;
  for (int order = 2; order <= 6; ++order) {
    for (int p = 0; p <= order; ++p) {
      const int q = order - p;
      for (int trial = 0; trial < 40; ++trial) {
        Multiset k, l;
        for (int i = 0; i < p; ++i) k.push_back(draw());
        for (int i = 0; i + 1 < q; ++i) l.push_back(draw());
        Mode need = kZeroMode;
        for (const auto& v : k) need = need + v;
        for (const auto& v : l) need = need - v;
        if (q > 0) {
          if (need == kZeroMode || std::abs(need[0]) > 2 || std::abs(need[1]) > 2) continue;
          l.push_back(need);
        } else if (need != kZeroMode) {
          continue;
        }
        for (double lambda : {1.0, -1.0}) {
          const double expected = oracle_coefficient(k, l, 1.3, lambda);
          const auto got = taylor_coefficient({k, l}, 1.3, lambda);
          ASSERT_NEAR(got.real(), expected, 1e-12 * std::max(1.0, std::abs(expected)))
              << "p=" << p << " q=" << q;
          EXPECT_EQ(got.imag(), 0.0);
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(TaylorCoefficient, HandPickedHigherOrderEntries) {
  // Cubic: z_a z_b conj(z_{a+b}) comes from the square root's leading term.
  const Mode a{1, 0, 0}, b{0, 1, 0}, c{1, 1, 0};
  const double rho = 0.9;
  EXPECT_NEAR(taylor_coefficient({{a, b}, {c}}, rho, 1.0).real(), rho, 1e-15);
  // Quintic with one mass factor: -1/(2 rho) times the cubic pattern count.
  EXPECT_NEAR(taylor_coefficient({{a, b, a}, {c, a}}, rho, 1.0).real(),
              oracle_coefficient({a, b, a}, {c, a}, rho, 1.0), 1e-14);
}

TEST(CoefficientBound, FitHoldsAndIsStableUnderBoxGrowth) {
  const CoefficientBound b3 = fit_coefficient_bound(2, 3, 3, 5, 1.0, 1.0);
  const CoefficientBound b4 = fit_coefficient_bound(2, 4, 3, 5, 1.0, 1.0);
  ASSERT_EQ(b3.max_abs_by_order.size(), 3u);
  EXPECT_GT(b4.indices_scanned, b3.indices_scanned);
  for (int r = 3; r <= 5; ++r) {
    const double h3 = b3.max_abs_by_order[static_cast<std::size_t>(r - 3)];
    const double h4 = b4.max_abs_by_order[static_cast<std::size_t>(r - 3)];
    EXPECT_LE(h3, b3.M * std::pow(b3.L, r) * (1 + 1e-12));
    EXPECT_LE(h4, b3.M * std::pow(b3.L, r) * (1 + 1e-12));
  }
  EXPECT_NEAR(b4.L / b3.L, 1.0, 0.1);
  EXPECT_NEAR(b4.M / b3.M, 1.0, 0.1);
}

TEST(CoefficientBound, RejectsOrdersAboveCap) {
  EXPECT_THROW(fit_coefficient_bound(2, 2, 3, 7, 1.0, 1.0), OrderCap);
  EXPECT_THROW(fit_coefficient_bound(2, 0, 3, 5, 1.0, 1.0), InvalidArgument);
}
