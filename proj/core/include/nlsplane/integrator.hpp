#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "nlsplane/collocation.hpp"
#include "nlsplane/spectral.hpp"

namespace nlsplane {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 0.0;
  std::size_t sample_every = 1;
  double lambda = 1.0;

  void validate() const;
};

// Largest step with dt * (K^2 + 2 lambda rho^2 K) <= 0.5, the long-run policy.
// For lambda rho^2 < 0 the factor falls back to K^2 so dt stays bounded.
double policy_time_step(int cutoff, double rho, double lambda);

// pi / (max |k|^2 + 2 |lambda| rho^2) over the lattice box of half-width
// `cutoff` around `center`. Modes with |k|^2 dt just below pi resonate with
// the plane-wave background under splitting and grow exponentially, whatever
// the size of the perturbation; the 2 |lambda| rho^2 term covers the width of
// that band.
double split_step_limit(int dim, int cutoff, const Mode& center, double rho,
                        double lambda);

// Strang splitting of i u_t = -Laplace u + lambda |u|^2 u: half linear step,
// exact pointwise phase rotation u(x) e^{-i lambda |u(x)|^2 dt} on the padded
// grid, half linear step, truncation to the lattice.
//
// Holds precomputed linear phases and its own transform, so one stepper per
// trajectory; distinct steppers are independent.
class StrangStepper {
 public:
  StrangStepper(const GridSpec& grid, double dt, double lambda);

  double dt() const noexcept { return dt_; }
  double lambda() const noexcept { return lambda_; }
  const GridSpec& grid() const noexcept { return grid_; }

  void step(FourierField& u);

 private:
  void linear_half(FourierField& u) const;

  GridSpec grid_;
  double dt_;
  double lambda_;
  std::vector<Complex> half_phase_minus_one_;
  std::vector<Complex> increment_;
  CollocationTransform transform_;
};

FourierField strang_step(const FourierField& u, double dt, double lambda);

struct TrajectorySample {
  std::size_t step = 0;
  double t = 0.0;
  ConservedFunctionals conserved;
};

using TrajectoryObserver =
    std::function<void(const TrajectorySample&, const FourierField&)>;

struct Trajectory {
  std::vector<TrajectorySample> samples;
  FourierField final_state;
  std::size_t steps = 0;
};

// Samples at step 0, every sample_every steps and at the final step. Throws
// NonFinite on NaN/Inf, on a coefficient above 1e6 or when the L2 norm drifts
// more than 1e-6 relative from its initial value.
Trajectory integrate(const FourierField& u0, const IntegratorConfig& cfg,
                     const TrajectoryObserver& observer = {});

}  // namespace nlsplane
