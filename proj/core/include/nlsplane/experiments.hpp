#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlsplane/diagonal.hpp"
#include "nlsplane/fourier_field.hpp"

namespace nlsplane {

struct ExperimentConfig {
  int d = 2;
  int K = 16;
  double s = 4.0;
  double rho = 1.0;
  double lambda = 1.0;
  Mode m = kZeroMode;
  double eps = 0.1;
  double N_exponent = 2.0;  // horizon T = eps^{-N}
  double dt = 0.0;          // 0 selects policy_time_step
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  // Explicit horizon override; 0 means eps^{-N}.
  double t_end = 0.0;

  double horizon() const;
  double resolved_dt() const;
  bool stable_regime() const { return 1.0 + 2.0 * lambda * rho * rho > 0.0; }
  // Throws InvalidArgument with a message naming the violated constraint.
  void validate() const;
};

using SuperActions = std::map<long long, double>;

// J_n = sum_{|j|^2 = n} |xi_j|^2 over j != 0.
SuperActions super_actions(const FourierField& xi);

// sum_n n^s |J_n - J0_n| / eps^2 (unnormalized when eps == 0).
double drift_metric(const SuperActions& J, const SuperActions& J0, double s,
                    double eps);

// Closed form of inf_phi ||e^{-i m.x} u - e^{i phi} u_m(0)||_{H^s}:
//   sqrt( (|u_m| - |u_m0|)^2 + ||e^{-i m.x} u - u_m||^2_{H^s} ),
// H^s weight (1 + |j - m|^2)^s.
double orbital_distance(const FourierField& u, Complex u_m0, const Mode& m,
                        double s);

// ||e^{-i m.x} u - u_m||_{H^s} with weight |j - m|^{2s} (the ||.||_s norm of
// the perturbation). Also used for the L2 norm with s = 0.
double perturbation_norm(const FourierField& u, const Mode& m, double s);

// Plane wave of carrier m plus random_perturbation of H^s norm eps, with the
// carrier amplitude chosen so the total L2 norm is exactly rho. The lattice is
// centered at m.
FourierField initial_data(const ExperimentConfig& cfg);

enum class RunStatus { ok, non_finite, chart_exit, zero_mode_vanished };
std::string to_string(RunStatus status);

struct DriftReport {
  static constexpr int kSchemaVersion = 1;

  ExperimentConfig config;
  double dt = 0.0;
  double t_end = 0.0;
  std::size_t steps = 0;
  bool normal_coordinates = true;  // false when the frame is unstable

  std::vector<double> times;
  std::vector<long long> shells;
  std::vector<std::vector<double>> J;  // J[sample][shell index]
  std::vector<double> D;
  std::vector<double> xi_norm;
  std::vector<double> w_norm;  // ||e^{-im.x}u - u_m||_s
  std::vector<double> orbital;
  std::vector<double> l2_residual;
  std::vector<double> energy_residual;
  std::vector<double> momentum_residual;

  // Norm equivalence constants from the extreme singular values of S_n.
  double c_hat = 0.0;
  double C_hat = 0.0;
  std::size_t sandwich_violations = 0;
  std::size_t l2_bound_violations = 0;

  bool bound_violated = false;  // max xi (or w) norm > 2x its initial value
  RunStatus status = RunStatus::ok;
  std::optional<double> failure_time;
  std::string failure_message;

  // Negative-control diagnostics (unstable regime).
  std::optional<double> growth_rate;
  std::optional<double> expected_growth_rate;
  std::optional<double> time_to_10x;
  double growth_factor = 1.0;

  double max_D() const;
  double max_xi_norm() const;
};

// Integrates the configured run and records super-action drift at each sample.
// Requires 1 + 2 lambda rho^2 > 0; NonFinite and PerturbationTooLarge
// propagate (the latter with the failure time in its message).
DriftReport run_drift_experiment(const ExperimentConfig& cfg);

// Same protocol in the unstable regime: normal coordinates do not exist, so
// only ||w||_s is tracked, together with an exponential growth-rate fit over
// the window where it grows from 10x to min(100x, 0.1 rho / ||w(0)||_s)x its
// initial size. Blow-up is recorded in the report instead of thrown.
DriftReport negative_control(const ExperimentConfig& cfg);

struct ResolutionCheck {
  DriftReport coarse;
  DriftReport fine;
  double relative_difference = 0.0;
  bool under_resolved = false;
};

// Repeats the run at cutoff 2K and compares max D; flags under-resolution
// above `tolerance` relative difference. With dt = 0 each run takes the policy
// step of its own cutoff; an explicit dt must be below the split-step limit
// at 2K.
ResolutionCheck resolution_check(const ExperimentConfig& cfg,
                                 double tolerance = 0.1);

struct BatchItem {
  std::optional<DriftReport> report;
  std::string error;
};

// Runs independent experiments on up to `threads` workers; results keep the
// input order.
std::vector<BatchItem> run_batch(const std::vector<ExperimentConfig>& configs,
                                 unsigned threads);

}  // namespace nlsplane
