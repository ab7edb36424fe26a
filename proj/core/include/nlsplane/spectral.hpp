#pragma once

#include <cstdint>

#include "nlsplane/fourier_field.hpp"

namespace nlsplane {

// Weighted l2 norm. With exclude_zero the weight is |j|^{2s} and j = 0 is
// skipped; otherwise the weight is (1 + |j|^2)^s.
double sobolev_norm(const FourierField& f, double s, bool exclude_zero);

struct ConservedFunctionals {
  double l2sq = 0.0;
  std::array<double, kMaxDim> momentum{};
  double energy = 0.0;
};

// Mass sum |u_j|^2, momentum sum j |u_j|^2 and the NLS energy
// sum |j|^2 |u_j|^2 + (lambda/2) sum_{j1+j2=j3+j4} u u conj(u) conj(u).
ConservedFunctionals conserved(const FourierField& f, double lambda);

// lambda * (|u|^2 u) restricted to the lattice, i.e. the convolution
// lambda sum_{j = j1 - j2 + j3} u_{j1} conj(u_{j2}) u_{j3}, without aliasing.
FourierField cubic_term(const FourierField& f, double lambda);

// sum_{j1+j2-j3-j4=0} f_{j1} f_{j2} conj(f_{j3}) conj(f_{j4}) = mean |f(x)|^4.
double quartic_sum(const FourierField& f);

// Random field with zero mode 0 and Gaussian modes scaled by
// |j|^{-(s + (d+1)/2)}, renormalized so that sobolev_norm(., s, true) == eps.
// Each mode's sample depends only on (seed, j), not on the lattice size.
FourierField random_perturbation(const GridSpec& grid, double s, double eps,
                                 std::uint64_t seed);

}  // namespace nlsplane
