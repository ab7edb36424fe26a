#include "nlsplane/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "nlsplane/errors.hpp"
#include "nlsplane/integrator.hpp"
#include "nlsplane/reduction.hpp"
#include "nlsplane/spectral.hpp"

namespace nlsplane {

double ExperimentConfig::horizon() const {
  if (t_end > 0.0) return t_end;
  return std::pow(eps, -N_exponent);
}

double ExperimentConfig::resolved_dt() const {
  return dt > 0.0 ? dt : policy_time_step(K, rho, lambda);
}

void ExperimentConfig::validate() const {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("d must be 1, 2 or 3");
  if (K < 1) throw InvalidArgument("K must be >= 1");
  if (!std::isfinite(s) || s < 0.0) throw InvalidArgument("s must be >= 0");
  if (!std::isfinite(rho) || rho <= 0.0) throw InvalidArgument("rho must be > 0");
  if (!std::isfinite(lambda)) throw InvalidArgument("lambda must be finite");
  for (int i = d; i < kMaxDim; ++i)
    if (m[static_cast<std::size_t>(i)] != 0)
      throw InvalidArgument("m has components beyond dimension d");
  if (!std::isfinite(eps) || eps < 0.0) throw InvalidArgument("eps must be >= 0");
  if (eps > 0.5 * rho)
    throw InvalidArgument(
        "chart constraint violated: eps must satisfy eps <= 0.5 * rho");
  if (!std::isfinite(N_exponent) || N_exponent <= 0.0)
    throw InvalidArgument("N_exponent must be > 0");
  if (!std::isfinite(dt) || dt < 0.0) throw InvalidArgument("dt must be >= 0");
  if (!std::isfinite(t_end) || t_end < 0.0)
    throw InvalidArgument("t_end must be >= 0");
  if (eps == 0.0 && t_end == 0.0)
    throw InvalidArgument("eps = 0 needs an explicit t_end");
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (!std::isfinite(horizon())) throw InvalidArgument("horizon is not finite");
  if (resolved_dt() >= split_step_limit(d, K, m, rho, lambda))
    throw InvalidArgument("dt exceeds the split-step stability limit pi / (max|k|^2 + 2|lambda| rho^2)");
}

SuperActions super_actions(const FourierField& xi) {
  SuperActions J;
  const GridSpec& g = xi.grid();
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const long long n = norm_sq(g.mode(i));
    if (n == 0) continue;
    J[n] += std::norm(xi[i]);
  }
  return J;
}

double drift_metric(const SuperActions& J, const SuperActions& J0, double s,
                    double eps) {
  double sum = 0.0;
  auto term = [&](long long n, double a, double b) {
    sum += std::pow(static_cast<double>(n), s) * std::abs(a - b);
  };
  for (const auto& [n, v] : J) {
    auto it = J0.find(n);
    term(n, v, it == J0.end() ? 0.0 : it->second);
  }
  for (const auto& [n, v] : J0)
    if (!J.contains(n)) term(n, 0.0, v);
  return eps > 0.0 ? sum / (eps * eps) : sum;
}

double orbital_distance(const FourierField& u, Complex u_m0, const Mode& m,
                        double s) {
  const GridSpec& g = u.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Mode j = g.mode(i);
    if (j == m) continue;
    sum += std::pow(1.0 + static_cast<double>(norm_sq(j - m)), s) * std::norm(u[i]);
  }
  const double radial = std::abs(u.at(m)) - std::abs(u_m0);
  return std::sqrt(radial * radial + sum);
}

double perturbation_norm(const FourierField& u, const Mode& m, double s) {
  const GridSpec& g = u.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Mode j = g.mode(i);
    if (j == m) continue;
    sum += std::pow(static_cast<double>(norm_sq(j - m)), s) * std::norm(u[i]);
  }
  return std::sqrt(sum);
}

FourierField initial_data(const ExperimentConfig& cfg) {
  cfg.validate();
  const GridSpec grid(cfg.d, cfg.K, cfg.m);
  FourierField u(grid);
  double l2sq = 0.0;
  if (cfg.eps > 0.0) {
    const FourierField p =
        random_perturbation(GridSpec(cfg.d, cfg.K), cfg.s, cfg.eps, cfg.seed);
    for (std::size_t i = 0; i < p.size(); ++i) {
      u.set(cfg.m + p.grid().mode(i), p[i]);
      l2sq += std::norm(p[i]);
    }
  }
  const double a2 = cfg.rho * cfg.rho - l2sq;
  if (!(a2 > 0.0))
    throw PerturbationTooLarge("perturbation L2 norm reaches rho");
  u.set(cfg.m, std::sqrt(a2));
  return u;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::ok: return "ok";
    case RunStatus::non_finite: return "non_finite";
    case RunStatus::chart_exit: return "chart_exit";
    case RunStatus::zero_mode_vanished: return "zero_mode_vanished";
  }
  return "unknown";
}

double DriftReport::max_D() const {
  double out = 0.0;
  for (double v : D) out = std::max(out, v);
  return out;
}

double DriftReport::max_xi_norm() const {
  double out = 0.0;
  for (double v : xi_norm) out = std::max(out, v);
  return out;
}

namespace {

std::size_t sample_stride(std::size_t n_steps, std::size_t samples) {
  return std::max<std::size_t>(1, n_steps / std::max<std::size_t>(1, samples));
}

// Echoes the run parameters and fills the per-sample conservation residuals.
struct Recorder {
  DriftReport& report;
  ConservedFunctionals c0;
  bool first = true;

  void conservation(const TrajectorySample& sample) {
    if (first) {
      c0 = sample.conserved;
      first = false;
    }
    const auto& c = sample.conserved;
    report.times.push_back(sample.t);
    report.l2_residual.push_back(std::abs(c.l2sq - c0.l2sq) / c0.l2sq);
    report.energy_residual.push_back(
        std::abs(c.energy - c0.energy) /
        std::max(std::abs(c0.energy), std::numeric_limits<double>::min()));
    double dp = 0.0, p0 = 0.0;
    for (std::size_t i = 0; i < c.momentum.size(); ++i) {
      dp = std::max(dp, std::abs(c.momentum[i] - c0.momentum[i]));
      p0 = std::max(p0, std::abs(c0.momentum[i]));
    }
    report.momentum_residual.push_back(dp / std::max(p0, c0.l2sq));
  }
};

DriftReport prepare(const ExperimentConfig& cfg, IntegratorConfig& icfg) {
  DriftReport report;
  report.config = cfg;
  report.dt = cfg.resolved_dt();
  report.t_end = cfg.horizon();
  const auto n_steps =
      static_cast<std::size_t>(std::llround(report.t_end / report.dt));
  icfg.dt = report.dt;
  icfg.t_end = report.t_end;
  icfg.lambda = cfg.lambda;
  icfg.sample_every = sample_stride(n_steps, cfg.samples);
  return report;
}

}  // namespace

DriftReport run_drift_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.stable_regime())
    throw UnstableRegime("1 + 2 lambda rho^2 <= 0: use negative_control");
  IntegratorConfig icfg;
  DriftReport report = prepare(cfg, icfg);

  const FourierField u0 = initial_data(cfg);
  const Complex u_m0 = u0.at(cfg.m);
  const DiagonalFrame diag(cfg.rho, cfg.lambda, GridSpec(cfg.d, cfg.K).max_shell());
  report.c_hat = diag.min_singular_value();
  report.C_hat = diag.max_singular_value();

  Recorder rec{report, {}};
  SuperActions J0;
  double l2_pert0 = 0.0;
  const double tol = 1e-12;

  auto observe = [&](const TrajectorySample& sample, const FourierField& u) {
    rec.conservation(sample);
    const PlaneWaveFrame frame{cfg.m, cfg.rho, cfg.lambda, sample.t};
    std::optional<ReducedState> red;
    try {
      red = eliminate_zero_mode(shift_frame(u, frame));
      reconstruct_a(red->w, std::sqrt(sample.conserved.l2sq));
    } catch (const Error& e) {
      throw PerturbationTooLarge("chart exit at t = " + std::to_string(sample.t) +
                                 ": " + e.what());
    }
    const FourierField xi = to_normal_coords(red->w, diag);
    SuperActions J = super_actions(xi);
    if (report.J.empty()) {
      J0 = J;
      for (const auto& kv : J0) report.shells.push_back(kv.first);
    }
    std::vector<double> row;
    row.reserve(report.shells.size());
    for (long long n : report.shells) row.push_back(J[n]);
    report.J.push_back(std::move(row));
    report.D.push_back(drift_metric(J, J0, cfg.s, cfg.eps));

    const double xn = sobolev_norm(xi, cfg.s, true);
    const double wn = perturbation_norm(u, cfg.m, cfg.s);
    report.xi_norm.push_back(xn);
    report.w_norm.push_back(wn);
    report.orbital.push_back(orbital_distance(u, u_m0, cfg.m, cfg.s));

    const double slack = tol * std::max(xn, wn) + 1e-300;
    if (wn < report.c_hat * xn - slack || wn > report.C_hat * xn + slack)
      ++report.sandwich_violations;

    const double l2_pert = perturbation_norm(u, cfg.m, 0.0);
    if (report.l2_residual.size() == 1) l2_pert0 = l2_pert;
    const double radial = std::abs(u.at(cfg.m)) - std::abs(u_m0);
    const double bound = std::max(l2_pert * l2_pert, l2_pert0 * l2_pert0);
    if (radial * radial > bound + tol * cfg.rho * cfg.rho) ++report.l2_bound_violations;
  };

  const Trajectory traj = integrate(u0, icfg, observe);
  report.steps = traj.steps;
  if (!report.xi_norm.empty() && report.xi_norm.front() > 0.0)
    report.bound_violated = report.max_xi_norm() > 2.0 * report.xi_norm.front();
  return report;
}

DriftReport negative_control(const ExperimentConfig& cfg) {
  cfg.validate();
  IntegratorConfig icfg;
  DriftReport report = prepare(cfg, icfg);
  report.normal_coordinates = cfg.stable_regime();

  double expected = 0.0;
  const long long max_shell = GridSpec(cfg.d, cfg.K).max_shell();
  for (long long n = 1; n <= max_shell; ++n) {
    const double disc = static_cast<double>(n) * static_cast<double>(n) +
                        2.0 * static_cast<double>(n) * cfg.lambda * cfg.rho * cfg.rho;
    if (disc < 0.0) expected = std::max(expected, std::sqrt(-disc));
  }
  report.expected_growth_rate = expected;

  const FourierField u0 = initial_data(cfg);
  Recorder rec{report, {}};
  auto observe = [&](const TrajectorySample& sample, const FourierField& u) {
    rec.conservation(sample);
    report.w_norm.push_back(perturbation_norm(u, cfg.m, cfg.s));
  };

  try {
    const Trajectory traj = integrate(u0, icfg, observe);
    report.steps = traj.steps;
  } catch (const NonFinite& e) {
    report.status = RunStatus::non_finite;
    report.failure_time = e.time();
    report.failure_message = e.what();
    report.steps = static_cast<std::size_t>(std::llround(e.time() / report.dt));
  }

  const double w0 = report.w_norm.empty() ? 0.0 : report.w_norm.front();
  if (w0 > 0.0) {
    double wmax = 0.0;
    for (double w : report.w_norm) wmax = std::max(wmax, w);
    report.growth_factor = wmax / w0;
    report.bound_violated = report.growth_factor > 2.0;
    for (std::size_t i = 0; i < report.w_norm.size(); ++i) {
      if (report.w_norm[i] >= 10.0 * w0) {
        report.time_to_10x = report.times[i];
        break;
      }
    }
    // Least-squares slope of log ||w||_s over the growth window, stopping at
    // the first sample above the upper edge.
    const double lo = 10.0 * w0;
    const double hi = std::min(100.0 * w0, 0.1 * cfg.rho);
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < report.w_norm.size() && hi > lo; ++i) {
      const double w = report.w_norm[i];
      if (w > hi) break;
      if (w < lo) continue;
      const double t = report.times[i], y = std::log(w);
      st += t;
      sy += y;
      stt += t * t;
      sty += t * y;
      ++count;
    }
    if (count >= 2) {
      const double nn = static_cast<double>(count);
      const double den = nn * stt - st * st;
      if (den > 0.0) report.growth_rate = (nn * sty - st * sy) / den;
    }
  }
  return report;
}

ResolutionCheck resolution_check(const ExperimentConfig& cfg, double tolerance) {
  ResolutionCheck out;
  out.coarse = run_drift_experiment(cfg);
  ExperimentConfig fine = cfg;
  fine.K = 2 * cfg.K;
  out.fine = run_drift_experiment(fine);
  const double a = out.coarse.max_D(), b = out.fine.max_D();
  const double scale = std::max(std::abs(b), std::numeric_limits<double>::min());
  out.relative_difference = std::abs(a - b) / scale;
  out.under_resolved = out.relative_difference > tolerance;
  return out;
}

std::vector<BatchItem> run_batch(const std::vector<ExperimentConfig>& configs,
                                 unsigned threads) {
  std::vector<BatchItem> items(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        items[i].report = configs[i].stable_regime()
                              ? run_drift_experiment(configs[i])
                              : negative_control(configs[i]);
      } catch (const std::exception& e) {
        items[i].error = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(
                             threads, static_cast<unsigned>(configs.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return items;
}

}  // namespace nlsplane
