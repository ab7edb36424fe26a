#include "nlsplane/reduction.hpp"

#include <cmath>

#include "nlsplane/errors.hpp"

namespace nlsplane {

namespace {

double gauge_phase(const Mode& j, const PlaneWaveFrame& f) {
  return f.t * static_cast<double>(norm_sq(f.m) + 2 * dot(j, f.m));
}

}  // namespace

FourierField shift_frame(const FourierField& u, const PlaneWaveFrame& frame) {
  const GridSpec& src = u.grid();
  FourierField v(src.recentered(kZeroMode));
  const GridSpec& dst = v.grid();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Mode j = src.mode(i) - frame.m;
    if (!dst.contains(j)) {
      if (u[i] != Complex{})
        throw FrameOutOfGrid("carrier shift moves mode " +
                             to_string(src.mode(i), src.dim()) +
                             " outside the lattice");
      continue;
    }
    v[dst.index_of(j)] = u[i] * std::polar(1.0, gauge_phase(j, frame));
  }
  return v;
}

FourierField unshift_frame(const FourierField& v, const PlaneWaveFrame& frame) {
  const GridSpec& src = v.grid();
  FourierField u(src.recentered(src.center() + frame.m));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Mode j = src.mode(i);
    u[u.grid().index_of(j + frame.m)] =
        v[i] * std::polar(1.0, -gauge_phase(j, frame));
  }
  return u;
}

ReducedState eliminate_zero_mode(const FourierField& v) {
  const GridSpec& grid = v.grid();
  if (!grid.contains(kZeroMode))
    throw InvalidArgument("zero mode is not on the lattice");
  double l2 = 0.0;
  for (const auto& c : v.coeffs()) l2 += std::norm(c);
  const double rho = std::sqrt(l2);

  const Complex v0 = v.at(kZeroMode);
  const double a = std::abs(v0);
  if (!(a >= 1e-12 * rho) || a == 0.0)
    throw ZeroModeVanishes("|v_0| below 1e-12 rho; polar decomposition undefined");

  ReducedState st{a, -std::arg(v0), FourierField(grid)};
  const Complex rot = std::polar(1.0, st.theta);
  const std::size_t zero = grid.index_of(kZeroMode);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != zero) st.w[i] = v[i] * rot;
  return st;
}

FourierField restore_zero_mode(const ReducedState& state) {
  FourierField v = state.w;
  const Complex rot = std::polar(1.0, -state.theta);
  v *= rot;
  v.set(kZeroMode, state.a * rot);
  return v;
}

double reconstruct_a(const FourierField& w, double rho) {
  const GridSpec& grid = w.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (norm_sq(grid.mode(i)) != 0) s += std::norm(w[i]);
  const double rad = rho * rho - s;
  if (!(rad > 0.0))
    throw PerturbationTooLarge(
        "sum of |w_j|^2 reaches rho^2; the zero-mode amplitude is undefined");
  return std::sqrt(rad);
}

}  // namespace nlsplane
