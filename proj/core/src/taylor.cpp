#include "nlsplane/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "nlsplane/errors.hpp"

namespace nlsplane {

Mode TaylorIndex::momentum() const {
  Mode m = kZeroMode;
  for (const auto& v : k) m = m + v;
  for (const auto& v : l) m = m - v;
  return m;
}

namespace {

using Multiset = std::vector<Mode>;  // sorted

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Number of distinct orderings of a sorted multiset.
double orderings(const Multiset& ms) {
  double r = factorial(static_cast<int>(ms.size()));
  for (std::size_t i = 0; i < ms.size();) {
    std::size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    r /= factorial(static_cast<int>(j - i));
    i = j;
  }
  return r;
}

// Distinct sub-multisets of size r <= 2, each with the sorted remainder.
std::vector<std::pair<Multiset, Multiset>> split_off(const Multiset& ms, int r) {
  std::vector<std::pair<Multiset, Multiset>> out;
  auto remainder = [&](std::size_t skip_a, std::size_t skip_b) {
    Multiset rest;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (i != skip_a && i != skip_b) rest.push_back(ms[i]);
    return rest;
  };
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  if (r == 0) {
    out.push_back({{}, ms});
  } else if (r == 1) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i > 0 && ms[i] == ms[i - 1]) continue;
      out.push_back({{ms[i]}, remainder(i, none)});
    }
  } else if (r == 2) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i > 0 && ms[i] == ms[i - 1]) continue;
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        if (j > i + 1 && ms[j] == ms[j - 1]) continue;
        out.push_back({{ms[i], ms[j]}, remainder(i, j)});
      }
    }
  }
  return out;
}

Mode sum(const Multiset& ms) {
  Mode s = kZeroMode;
  for (const auto& v : ms) s = s + v;
  return s;
}

// Building blocks of the reduced Hamiltonian, as polynomials in (z, conj z):
//   One = 1, Pair = sum z_j z_{-j}, PairBar = conj analogue,
//   Quartic = sum_{j1+j2=j3+j4} z z zb zb, CubicZ = sum_{j1+j2=j3} z z zb,
//   CubicZb = sum_{j1=j2+j3} z zb zb, and Mass = sum z zb raised to a power.
enum class Block { One, Pair, PairBar, Quartic, CubicZ, CubicZb };

std::pair<int, int> block_degree(Block b) {
  switch (b) {
    case Block::One: return {0, 0};
    case Block::Pair: return {2, 0};
    case Block::PairBar: return {0, 2};
    case Block::Quartic: return {2, 2};
    case Block::CubicZ: return {2, 1};
    case Block::CubicZb: return {1, 2};
  }
  return {0, 0};
}

// Coefficient of the monomial z^a zb^b (given as sub-multisets) in the block.
double block_coefficient(Block b, const Multiset& a, const Multiset& bb) {
  switch (b) {
    case Block::One:
      return 1.0;
    case Block::Pair:
      // z_v z_{-v} arises from j = v and j = -v.
      return sum(a) == kZeroMode ? 2.0 : 0.0;
    case Block::PairBar:
      return sum(bb) == kZeroMode ? 2.0 : 0.0;
    case Block::Quartic:
      return sum(a) == sum(bb) ? orderings(a) * orderings(bb) : 0.0;
    case Block::CubicZ:
      return sum(a) == sum(bb) ? orderings(a) : 0.0;
    case Block::CubicZb:
      return sum(a) == sum(bb) ? orderings(bb) : 0.0;
  }
  return 0.0;
}

// Coefficient of z^alpha zb^beta in Mass^k * block.
double mass_power_coefficient(const Multiset& alpha, const Multiset& beta,
                              Block b, int k) {
  const auto [da, db] = block_degree(b);
  if (static_cast<int>(alpha.size()) != da + k ||
      static_cast<int>(beta.size()) != db + k)
    return 0.0;
  double total = 0.0;
  for (const auto& [sub_a, rest_a] : split_off(alpha, da)) {
    for (const auto& [sub_b, rest_b] : split_off(beta, db)) {
      if (rest_a != rest_b) continue;
      const double c = block_coefficient(b, sub_a, sub_b);
      if (c == 0.0) continue;
      // Mass^k = (sum z_v zb_v)^k: multinomial k! / prod gamma_v!.
      total += c * orderings(rest_a);
    }
  }
  return total;
}

// Coefficient c_k of x^k in sqrt(rho^2 - x) = rho sum_k binom(1/2, k) (-x/rho^2)^k.
double sqrt_series(int k, double rho) {
  double binom = 1.0;
  for (int i = 0; i < k; ++i) binom *= (0.5 - i) / (i + 1);
  return rho * binom * std::pow(-1.0 / (rho * rho), k);
}

double monomial_coefficient(const Multiset& alpha, const Multiset& beta,
                            double rho, double lambda) {
  const int p = static_cast<int>(alpha.size());
  const int q = static_cast<int>(beta.size());
  const int deg = p + q;
  const double sigma = rho * rho;
  double c = 0.0;
  if (deg == 0) return lambda * sigma * sigma;
  if (deg == 2) {
    if (p == 1 && q == 1 && alpha == beta)
      c += static_cast<double>(norm_sq(alpha[0])) + lambda * sigma;
    c += 0.5 * lambda * sigma * mass_power_coefficient(alpha, beta, Block::Pair, 0);
    c += 0.5 * lambda * sigma *
         mass_power_coefficient(alpha, beta, Block::PairBar, 0);
  }
  if (deg == 4) {
    c += 0.5 * lambda * mass_power_coefficient(alpha, beta, Block::Quartic, 0);
    c -= 1.5 * lambda * mass_power_coefficient(alpha, beta, Block::One, 2);
    c -= 0.5 * lambda * mass_power_coefficient(alpha, beta, Block::Pair, 1);
    c -= 0.5 * lambda * mass_power_coefficient(alpha, beta, Block::PairBar, 1);
  }
  if (deg % 2 == 1) {
    const int k = (deg - 3) / 2;
    const double ck = lambda * sqrt_series(k, rho);
    c += ck * mass_power_coefficient(alpha, beta, Block::CubicZ, k);
    c += ck * mass_power_coefficient(alpha, beta, Block::CubicZb, k);
  }
  return c;
}

double symmetrized(Multiset alpha, Multiset beta, double rho, double lambda) {
  std::sort(alpha.begin(), alpha.end());
  std::sort(beta.begin(), beta.end());
  return monomial_coefficient(alpha, beta, rho, lambda) /
         (orderings(alpha) * orderings(beta));
}

}  // namespace

std::complex<double> taylor_coefficient(const TaylorIndex& idx, double rho,
                                        double lambda) {
  if (static_cast<int>(idx.p() + idx.q()) > kTaylorOrderCap)
    throw OrderCap("Taylor coefficients are available up to p + q = 6");
  for (const auto& v : idx.k)
    if (v == kZeroMode) throw InvalidArgument("multi-index entries must be nonzero");
  for (const auto& v : idx.l)
    if (v == kZeroMode) throw InvalidArgument("multi-index entries must be nonzero");
  if (idx.momentum() != kZeroMode) return 0.0;
  return symmetrized(idx.k, idx.l, rho, lambda);
}

CoefficientBound fit_coefficient_bound(int dim, int box, int min_order,
                                       int max_order, double rho, double lambda) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be 1..3");
  if (box < 1) throw InvalidArgument("index box must be >= 1");
  if (min_order < 1 || max_order < min_order)
    throw InvalidArgument("invalid order range");
  if (max_order > kTaylorOrderCap)
    throw OrderCap("Taylor coefficients are available up to p + q = 6");

  std::vector<Mode> vecs;
  {
    const int w = 2 * box + 1;
    int total = 1;
    for (int i = 0; i < dim; ++i) total *= w;
    for (int idx = 0; idx < total; ++idx) {
      Mode v = kZeroMode;
      int r = idx;
      for (int i = dim - 1; i >= 0; --i) {
        v[i] = r % w - box;
        r /= w;
      }
      if (v != kZeroMode) vecs.push_back(v);
    }
    std::sort(vecs.begin(), vecs.end());
  }
  std::map<Mode, std::size_t> position;
  for (std::size_t i = 0; i < vecs.size(); ++i) position[vecs[i]] = i;

  CoefficientBound out;
  out.box = box;
  out.min_order = min_order;
  out.max_order = max_order;
  out.max_abs_by_order.assign(static_cast<std::size_t>(max_order - min_order + 1),
                              0.0);

  Multiset k, l;
  std::vector<std::size_t> kpos, lpos;

  // Enumerates sorted multisets of `size` entries into `ms`, then calls leaf.
  std::function<void(Multiset&, std::vector<std::size_t>&, int, std::size_t,
                     const std::function<void()>&)>
      grow = [&](Multiset& ms, std::vector<std::size_t>& pos, int size,
                 std::size_t from, const std::function<void()>& leaf) {
        if (static_cast<int>(ms.size()) == size) {
          leaf();
          return;
        }
        for (std::size_t i = from; i < vecs.size(); ++i) {
          ms.push_back(vecs[i]);
          pos.push_back(i);
          grow(ms, pos, size, i, leaf);
          ms.pop_back();
          pos.pop_back();
        }
      };

  for (int order = min_order; order <= max_order; ++order) {
    double& best = out.max_abs_by_order[static_cast<std::size_t>(order - min_order)];
    for (int p = 0; p <= order; ++p) {
      const int q = order - p;
      auto evaluate = [&]() {
        ++out.indices_scanned;
        best = std::max(best, std::abs(symmetrized(k, l, rho, lambda)));
      };
      auto close_l = [&]() {
        if (q == 0) {
          if (sum(k) == kZeroMode) evaluate();
          return;
        }
        // Last entry of l is fixed by zero momentum.
        const Mode need = sum(k) - sum(l);
        const auto it = position.find(need);
        if (it == position.end()) return;
        if (!lpos.empty() && it->second < lpos.back()) return;
        l.push_back(need);
        lpos.push_back(it->second);
        evaluate();
        l.pop_back();
        lpos.pop_back();
      };
      auto after_k = [&]() { grow(l, lpos, std::max(q - 1, 0), 0, close_l); };
      grow(k, kpos, p, 0, after_k);
    }
  }

  // Least-squares line through (r, log max|H_r|) over orders with nonzero maxima.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int order = min_order; order <= max_order; ++order) {
    const double h = out.max_abs_by_order[static_cast<std::size_t>(order - min_order)];
    if (h <= 0.0) continue;
    const double y = std::log(h);
    sx += order;
    sy += y;
    sxx += static_cast<double>(order) * order;
    sxy += order * y;
    ++cnt;
  }
  double slope = 0.0;
  if (cnt >= 2) slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  out.L = std::exp(slope);
  for (int order = min_order; order <= max_order; ++order) {
    const double h = out.max_abs_by_order[static_cast<std::size_t>(order - min_order)];
    out.M = std::max(out.M, h / std::pow(out.L, order));
  }
  return out;
}

}  // namespace nlsplane
