#include "nlsplane/integrator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlsplane/errors.hpp"

namespace nlsplane {

namespace {

// Plain complex product, without the NaN recovery of std::complex operator*.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

// e^{i phase} - 1 to full relative accuracy. Nonlinear phases are of size
// lambda |u|^2 dt, so the series branch covers every step of a resolved run;
// truncating after phase^11 leaves an error far below one ulp for |phase| <= 0.1.
inline Complex expi_minus_one(double phase) {
  const double p2 = phase * phase;
  if (p2 <= 0.01) {
    const double sin_tail =
        -1.0 / 6 + p2 * (1.0 / 120 + p2 * (-1.0 / 5040 + p2 * (1.0 / 362880 + p2 * (-1.0 / 39916800))));
    const double cos_m1 =
        p2 * (-0.5 + p2 * (1.0 / 24 + p2 * (-1.0 / 720 + p2 * (1.0 / 40320 + p2 * (-1.0 / 3628800)))));
    return {cos_m1, phase + phase * p2 * sin_tail};
  }
  const double h = std::sin(0.5 * phase);
  return {-2.0 * h * h, std::sin(phase)};
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw InvalidArgument("integrator dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw InvalidArgument("integrator t_end must be >= 0");
  if (sample_every < 1) throw InvalidArgument("sample_every must be >= 1");
}

double split_step_limit(int dim, int cutoff, const Mode& center, double rho,
                        double lambda) {
  double top = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double r = std::abs(center[static_cast<std::size_t>(a)]) + cutoff;
    top += r * r;
  }
  return std::numbers::pi / std::max(top + 2.0 * std::abs(lambda) * rho * rho, 1.0);
}

double policy_time_step(int cutoff, double rho, double lambda) {
  const double k = cutoff;
  const double rate = std::max(k * k, k * k + 2.0 * lambda * rho * rho * k);
  return 0.5 / std::max(rate, 1.0);
}

StrangStepper::StrangStepper(const GridSpec& grid, double dt, double lambda)
    : grid_(grid), dt_(dt), lambda_(lambda), transform_(grid) {
  half_phase_minus_one_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double n = static_cast<double>(norm_sq(grid.mode(i)));
    // Stored as e^{i theta} - 1, accurate to a few ulps of its own size. The
    // rounded e^{i theta} has |.| != 1 by up to an ulp, and multiplying by the
    // same factor every step drifts the L2 norm linearly in time.
    half_phase_minus_one_[i] = expi_minus_one(-0.5 * n * dt);
  }
}

void StrangStepper::linear_half(FourierField& u) const {
  auto c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] += mul(c[i], half_phase_minus_one_[i]);
}

void StrangStepper::step(FourierField& u) {
  if (!(u.grid() == grid_))
    throw InvalidArgument("field lattice does not match the stepper");
  if (dt_ == 0.0) return;
  linear_half(u);
  transform_.to_points(u.coeffs());
  // Only the increment v (e^{i phase} - 1) goes back through the transform:
  // transforming the full field would add the rounding of the dominant carrier
  // to it with the same sign every step.
  const double scale = -lambda_ * dt_;
  for (auto& v : transform_.points()) v = mul(v, expi_minus_one(scale * std::norm(v)));
  increment_.resize(u.size());
  transform_.to_coeffs(increment_);
  auto c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += increment_[i];
  linear_half(u);
}

FourierField strang_step(const FourierField& u, double dt, double lambda) {
  if (dt == 0.0) return u;
  StrangStepper stepper(u.grid(), dt, lambda);
  FourierField out = u;
  stepper.step(out);
  return out;
}

namespace {

[[noreturn]] void blow_up(const std::string& why, double t) {
  std::ostringstream os;
  os << "integration aborted at t=" << t << ": " << why;
  throw NonFinite(os.str(), t);
}

}  // namespace

Trajectory integrate(const FourierField& u0, const IntegratorConfig& cfg,
                     const TrajectoryObserver& observer) {
  cfg.validate();
  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));

  Trajectory traj{{}, u0, n_steps};
  FourierField& u = traj.final_state;
  if (!u.all_finite()) blow_up("initial field is not finite", 0.0);

  StrangStepper stepper(u.grid(), cfg.dt, cfg.lambda);

  auto record = [&](std::size_t step) {
    TrajectorySample s{step, static_cast<double>(step) * cfg.dt,
                       conserved(u, cfg.lambda)};
    if (observer) observer(s, u);
    traj.samples.push_back(s);
  };

  record(0);
  const double l2_0 = traj.samples.front().conserved.l2sq;

  for (std::size_t step = 1; step <= n_steps; ++step) {
    stepper.step(u);

    const double t = static_cast<double>(step) * cfg.dt;
    double l2 = 0.0;
    double peak = 0.0;
    for (const auto& c : u.coeffs()) {
      const double a2 = std::norm(c);
      l2 += a2;
      peak = std::max(peak, a2);
    }
    if (!std::isfinite(l2)) blow_up("non-finite coefficient", t);
    if (peak > 1e12) blow_up("coefficient magnitude exceeded 1e6", t);
    if (l2_0 > 0.0 && std::abs(l2 - l2_0) > 1e-6 * l2_0)
      blow_up("L2 norm drifted more than 1e-6 relative", t);

    if (step % cfg.sample_every == 0 || step == n_steps) record(step);
  }
  return traj;
}

}  // namespace nlsplane
