#include "nlsplane/reduction.hpp"

#include <cmath>

#include "nlsplane/collocation.hpp"
#include "nlsplane/errors.hpp"
#include "nlsplane/spectral.hpp"

namespace nlsplane {

namespace {

void require_centered(const FourierField& w) {
  if (w.grid().center() != kZeroMode)
    throw InvalidArgument("reduced variables must live on a lattice centered at 0");
}

}  // namespace

FourierField rhs_reduced(const FourierField& w, double rho, double lambda) {
  require_centered(w);
  const GridSpec& grid = w.grid();
  const double a = reconstruct_a(w, rho);
  const std::size_t zero = grid.index_of(kZeroMode);

  FourierField full = w;
  full[zero] = a;
  const FourierField cubic = cubic_term(full, 1.0);
  // dP/da = 2 lambda Re (|W|^2 W)_0, so the theta-correction is
  // w_j lambda Re(cubic_0) / a.
  const double correction = lambda * cubic[zero].real() / a;

  FourierField out(grid);
  const Complex minus_i(0.0, -1.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == zero) continue;
    const double n = static_cast<double>(norm_sq(grid.mode(i)));
    out[i] = minus_i * (n * w[i] + lambda * cubic[i] - correction * w[i]);
  }
  return out;
}

Complex hamiltonian_reduced_complex(const FourierField& w, double rho,
                                    double lambda) {
  require_centered(w);
  const GridSpec& grid = w.grid();
  const std::size_t zero = grid.index_of(kZeroMode);
  FourierField z = w;
  z[zero] = 0.0;

  const double sigma = rho * rho;
  double mass = 0.0;
  double quadratic = 0.0;
  Complex pair{};      // sum z_j z_{-j}
  Complex pair_bar{};  // sum conj(z_j) conj(z_{-j})
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Mode j = grid.mode(i);
    const double a2 = std::norm(z[i]);
    mass += a2;
    quadratic += (static_cast<double>(norm_sq(j)) + lambda * sigma) * a2;
    const Complex partner = z.at(-j);
    pair += z[i] * partner;
    pair_bar += std::conj(z[i]) * std::conj(partner);
  }
  const double radicand = sigma - mass;
  if (!(radicand > 0.0))
    throw PerturbationTooLarge("sum of |z_j|^2 reaches rho^2 in the Hamiltonian");

  auto& tr = thread_collocation(grid);
  tr.to_points(z.coeffs());
  double quartic = 0.0;
  Complex cubic_zzb{};   // sum_{j1+j2-j3=0} z z conj(z)
  Complex cubic_zbb{};   // sum_{j1-j2-j3=0} z conj(z) conj(z)
  for (const auto& v : tr.points()) {
    const double m2 = std::norm(v);
    quartic += m2 * m2;
    cubic_zzb += v * v * std::conj(v);
    cubic_zbb += v * std::conj(v) * std::conj(v);
  }
  const double inv = 1.0 / static_cast<double>(grid.collocation_points());
  quartic *= inv;
  cubic_zzb *= inv;
  cubic_zbb *= inv;

  Complex h = lambda * sigma * sigma + quadratic;
  h += 0.5 * lambda * sigma * (pair_bar + pair);
  h += 0.5 * lambda * quartic - 1.5 * lambda * mass * mass;
  h -= 0.5 * lambda * pair * mass + 0.5 * lambda * pair_bar * mass;
  h += lambda * (cubic_zzb + cubic_zbb) * std::sqrt(radicand);
  return h;
}

double hamiltonian_reduced(const FourierField& w, double rho, double lambda) {
  return hamiltonian_reduced_complex(w, rho, lambda).real();
}

}  // namespace nlsplane
