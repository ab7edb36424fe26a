#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>

#include "nlsplane/collocation.hpp"
#include "nlsplane/diagonal.hpp"
#include "nlsplane/integrator.hpp"
#include "nlsplane/reduction.hpp"
#include "nlsplane/report_io.hpp"
#include "nlsplane/spectral.hpp"
#include "nlsplane_cli/cli.hpp"

namespace nlsplane::cli {

namespace {

// Passes when value <= tolerance, or when value lies in [lower, tolerance].
struct Check {
  Check(double v, double tol, std::optional<double> lo = std::nullopt)
      : value(v), tolerance(tol), lower(lo) {}

  double value;
  double tolerance;
  std::optional<double> lower;
};

InvariantResult judge(std::string name, const Check& c) {
  InvariantResult r;
  r.name = std::move(name);
  const bool above = !c.lower || c.value >= *c.lower;
  r.passed = std::isfinite(c.value) && c.value <= c.tolerance && above;
  if (c.lower) {
    r.detail = format_double(c.value) + " in [" + format_double(*c.lower) + ", " +
               format_double(c.tolerance) + "]";
  } else {
    r.detail = format_double(c.value) + " <= " + format_double(c.tolerance);
  }
  return r;
}

FourierField sample_field(const GridSpec& grid, std::uint64_t seed) {
  return random_perturbation(grid, 1.0, 0.3, seed);
}

Check collocation_round_trip() {
  const FourierField f = sample_field(GridSpec(2, 6), 11);
  CollocationTransform t(f.grid());
  FourierField g = f;
  t.to_points(g.coeffs());
  t.to_coeffs(g.coeffs());
  return {max_abs_diff(f, g), 1e-13};
}

Check cubic_convolution() {
  const GridSpec grid(1, 5);
  const FourierField f = sample_field(grid, 12);
  const FourierField fast = cubic_term(f, 1.0);
  double err = 0.0;
  const int K = grid.cutoff();
  for (int j = -K; j <= K; ++j) {
    Complex sum{};
    for (int a = -K; a <= K; ++a)
      for (int b = -K; b <= K; ++b) {
        const int c = j - a + b;
        sum += f.at({a, 0, 0}) * std::conj(f.at({b, 0, 0})) * f.at({c, 0, 0});
      }
    err = std::max(err, std::abs(sum - fast.at({j, 0, 0})));
  }
  return {err, 1e-13};
}

Check frame_round_trip() {
  const Mode m{1, -2, 0};
  const FourierField p = sample_field(GridSpec(2, 6), 13);
  FourierField u(GridSpec(2, 6, m));
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = p[i];
  const PlaneWaveFrame frame{m, 1.0, 1.0, 0.37};
  const FourierField back = unshift_frame(shift_frame(u, frame), frame);
  return {max_abs_diff(u, back), 1e-14};
}

Check elimination_round_trip() {
  FourierField v = sample_field(GridSpec(2, 5), 14);
  v.set(kZeroMode, std::polar(0.9, 0.4));
  const FourierField back = restore_zero_mode(eliminate_zero_mode(v));
  return {max_abs_diff(v, back), 1e-14};
}

Check normal_round_trip() {
  const FourierField w = sample_field(GridSpec(2, 5), 15);
  const DiagonalFrame frame(1.0, 1.0, w.grid().max_shell());
  const FourierField back = from_normal_coords(to_normal_coords(w, frame), frame);
  return {max_abs_diff(w, back), 1e-13};
}

constexpr long long kShellLimit = 10000;
constexpr std::array<std::array<double, 2>, 2> kRegimes{{{1.0, 1.0}, {-1.0, 0.5}}};

template <class F>
double over_shells(F&& f, bool fault) {
  double worst = 0.0;
  for (const auto& [lambda, rho] : kRegimes) {
    for (long long n = 1; n <= kShellLimit; ++n) {
      ShellTransform t = build_shell_transform(n, rho, lambda);
      if (fault && n == 7) t.s[0][1] += 1e-6;
      worst = std::max(worst, f(t, rho, lambda));
    }
  }
  return worst;
}

Check reduced_rhs_oracle() {
  // Central differences of the reduced trajectory against the reduced vector
  // field: the error is O(h^2), so halving h divides it by four.
  const GridSpec grid(1, 8);
  FourierField u0 = random_perturbation(grid, 2.0, 0.05, 21);
  double l2 = 0.0;
  for (const auto& c : u0.coeffs()) l2 += std::norm(c);
  u0.set(kZeroMode, std::sqrt(1.0 - l2));
  const double t0 = 0.05;
  auto error = [&](double h) {
    StrangStepper stepper(grid, h, 1.0);
    FourierField u = u0;
    const auto n = static_cast<std::size_t>(std::llround(t0 / h));
    std::vector<FourierField> w;
    for (std::size_t k = 0; k <= n + 1; ++k) {
      if (k + 1 >= n) w.push_back(eliminate_zero_mode(u).w);
      stepper.step(u);
    }
    FourierField diff = w[2] - w[0];
    diff *= Complex(1.0 / (2.0 * h));
    return max_abs_diff(diff, rhs_reduced(w[1], 1.0, 1.0));
  };
  const double ratio = error(1e-3) / error(5e-4);
  return {ratio, 4.5, 3.5};
}

Check frequency_asymptotics() {
  double C = 0.0;
  for (long long n = 10; n <= 100; ++n) {
    const double nn = static_cast<double>(n);
    C = std::max(C, std::abs(omega_asymptotic_remainder(n, 1.0, 1.0)) * nn * nn);
  }
  double worst = 0.0;
  for (long long n = 100; n <= 1000000; ++n) {
    const double nn = static_cast<double>(n);
    worst = std::max(worst, std::abs(omega_asymptotic_remainder(n, 1.0, 1.0)) *
                                nn * nn / C);
  }
  return {worst, 1.0};
}

Check super_action_identity() {
  const FourierField xi = sample_field(GridSpec(2, 6), 16);
  const double s = 3.0;
  double sum = 0.0;
  for (const auto& [n, J] : super_actions(xi)) sum += std::pow(static_cast<double>(n), s) * J;
  const double norm = sobolev_norm(xi, s, true);
  return {std::abs(sum - norm * norm) / (norm * norm), 1e-13};
}

Check plane_wave_exactness() {
  const Mode m{1, 1, 0};
  const double rho = 0.8, lambda = 1.0, T = 1.0;
  FourierField u(GridSpec(2, 4, m));
  u.set(m, rho);
  const Trajectory traj = integrate(u, IntegratorConfig{1e-3, T, 1000, lambda});
  const double omega = static_cast<double>(norm_sq(m)) + lambda * rho * rho;
  FourierField exact(u.grid());
  exact.set(m, std::polar(rho, -omega * T));
  return {max_abs_diff(traj.final_state, exact), 1e-10};
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(const VerifyOptions& opts) {
  const bool fault = opts.inject_diagonalization_fault;
  std::vector<std::pair<std::string, std::function<Check()>>> suite{
      {"collocation round trip", collocation_round_trip},
      {"cubic term vs direct convolution", cubic_convolution},
      {"frame shift round trip", frame_round_trip},
      {"zero-mode elimination round trip", elimination_round_trip},
      {"normal coordinates round trip", normal_round_trip},
      {"diagonalization residual",
       [fault] {
         return Check{over_shells(diagonalization_residual, fault), 1e-10};
       }},
      {"S_n determinant",
       [fault] {
         return Check{over_shells([](const ShellTransform& t, double, double) {
                        return std::abs(determinant(t.s) - 1.0);
                      }, fault),
                      1e-12};
       }},
      {"S_n symmetry",
       [fault] {
         return Check{over_shells([](const ShellTransform& t, double, double) {
                        return std::abs(t.s[0][1] - t.s[1][0]) +
                               std::abs(t.s_inv[0][1] - t.s_inv[1][0]);
                      }, fault),
                      0.0};
       }},
      {"reduced rhs oracle", reduced_rhs_oracle},
      {"frequency asymptotics", frequency_asymptotics},
      {"super-action identity", super_action_identity},
      {"plane wave exactness", plane_wave_exactness},
  };
  std::vector<InvariantResult> out;
  for (const auto& [name, check] : suite) {
    try {
      out.push_back(judge(name, check()));
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  const auto results = run_invariant_suite(opts);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left
        << std::setw(static_cast<int>(width)) << r.name << "  " << r.detail << '\n';
  }
  for (const auto& r : results) {
    if (!r.passed) {
      err << "verify: invariant failed: " << r.name << '\n';
      return kExitInvariantFailed;
    }
  }
  return kExitOk;
}

}  // namespace nlsplane::cli
