#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nlsplane/grid.hpp"

namespace nlsplane {

inline constexpr int kTaylorOrderCap = 6;

// Multi-index (k, l) in Z^p x Z^q with nonzero entries, labelling the monomial
// z_{k1} ... z_{kp} conj(z_{l1}) ... conj(z_{lq}).
struct TaylorIndex {
  std::vector<Mode> k;
  std::vector<Mode> l;

  std::size_t p() const noexcept { return k.size(); }
  std::size_t q() const noexcept { return l.size(); }
  Mode momentum() const;
};

// Coefficient of the reduced Hamiltonian in the symmetrized basis: the total
// coefficient of the monomial divided by the number of distinct orderings of
// k and of l. Zero for nonzero momentum. Throws OrderCap for p + q > 6.
std::complex<double> taylor_coefficient(const TaylorIndex& idx, double rho,
                                        double lambda);

struct CoefficientBound {
  int box = 0;
  int min_order = 0;
  int max_order = 0;
  std::vector<double> max_abs_by_order;  // index r - min_order
  std::size_t indices_scanned = 0;
  double M = 0.0;
  double L = 0.0;
};

// Scans all zero-momentum (k, l) with entries in {1 <= |v|_inf <= box} of Z^d
// and min_order <= p + q <= max_order, then fits |H_kl| <= M L^{p+q}: L from a
// least-squares line through log max|H| per order, M the smallest constant
// that makes the bound hold.
CoefficientBound fit_coefficient_bound(int dim, int box, int min_order,
                                       int max_order, double rho, double lambda);

}  // namespace nlsplane
