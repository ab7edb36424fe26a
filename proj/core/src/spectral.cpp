#include "nlsplane/spectral.hpp"

#include <cmath>
#include <random>

#include "nlsplane/collocation.hpp"
#include "nlsplane/errors.hpp"

namespace nlsplane {

double sobolev_norm(const FourierField& f, double s, bool exclude_zero) {
  if (s < 0.0) throw InvalidArgument("Sobolev exponent must be >= 0");
  const auto& grid = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = std::norm(f[i]);
    if (a2 == 0.0) continue;
    const auto n = static_cast<double>(norm_sq(grid.mode(i)));
    if (exclude_zero) {
      if (n == 0.0) continue;
      acc += std::pow(n, s) * a2;
    } else {
      acc += std::pow(1.0 + n, s) * a2;
    }
  }
  return std::sqrt(acc);
}

double quartic_sum(const FourierField& f) {
  auto& tr = thread_collocation(f.grid());
  tr.to_points(f.coeffs());
  double acc = 0.0;
  for (const auto& v : tr.points()) {
    const double m2 = std::norm(v);
    acc += m2 * m2;
  }
  return acc / static_cast<double>(f.grid().collocation_points());
}

ConservedFunctionals conserved(const FourierField& f, double lambda) {
  const auto& grid = f.grid();
  ConservedFunctionals out;
  double kinetic = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = std::norm(f[i]);
    const Mode j = grid.mode(i);
    out.l2sq += a2;
    for (int a = 0; a < grid.dim(); ++a) out.momentum[a] += j[a] * a2;
    kinetic += static_cast<double>(norm_sq(j)) * a2;
  }
  out.energy = kinetic + 0.5 * lambda * quartic_sum(f);
  return out;
}

FourierField cubic_term(const FourierField& f, double lambda) {
  auto& tr = thread_collocation(f.grid());
  tr.to_points(f.coeffs());
  for (auto& v : tr.points()) v *= lambda * std::norm(v);
  FourierField out(f.grid());
  tr.to_coeffs(out.coeffs());
  return out;
}

FourierField random_perturbation(const GridSpec& grid, double s, double eps,
                                 std::uint64_t seed) {
  if (!(eps > 0.0)) throw InvalidArgument("perturbation size eps must be > 0");
  if (grid.cutoff() < 1 && norm_sq(grid.center()) == 0)
    throw InvalidArgument("lattice has no nonzero modes");

  const double decay = s + 0.5 * (grid.dim() + 1);
  FourierField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mode j = grid.mode(i);
    const long long n = norm_sq(j);
    if (n == 0) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(j[0]),
                      static_cast<std::uint32_t>(j[1]),
                      static_cast<std::uint32_t>(j[2])};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    const double scale = std::pow(static_cast<double>(n), -0.5 * decay);
    out[i] = Complex(re, im) * (scale / std::sqrt(2.0));
  }
  const double norm = sobolev_norm(out, s, true);
  if (!(norm > 0.0)) throw InvalidArgument("perturbation has zero norm");
  out *= eps / norm;
  return out;
}

}  // namespace nlsplane
