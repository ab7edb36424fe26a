#include "nlsplane/report_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace nlsplane {

using nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string join_shells(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

// Non-finite doubles become null, which is the only JSON spelling they have.
ordered_json number(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json numbers(const std::vector<double>& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : ordered_json(nullptr);
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json m = ordered_json::array();
  for (int i = 0; i < c.d; ++i) m.push_back(c.m[static_cast<std::size_t>(i)]);
  return ordered_json{{"d", c.d},
                      {"K", c.K},
                      {"s", c.s},
                      {"rho", c.rho},
                      {"lambda", c.lambda},
                      {"m", m},
                      {"eps", c.eps},
                      {"N_exponent", c.N_exponent},
                      {"dt", c.dt},
                      {"seed", c.seed},
                      {"samples", c.samples},
                      {"t_end", c.t_end}};
}

ordered_json record_json(const DivisorRecord& r) {
  return ordered_json{{"m", r.m},
                      {"n", r.n},
                      {"value", number(r.value)},
                      {"mu3", r.mu3},
                      {"cancels_pairwise", r.cancels_pairwise}};
}

}  // namespace

void write_drift_csv(std::ostream& out, const DriftReport& report) {
  out << "t,D,xi_norm,orbital,l2_residual,energy_residual,momentum_residual\n";
  auto cell = [](const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? format_double(v[i]) : std::string();
  };
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    out << cell(report.times, i) << ',' << cell(report.D, i) << ','
        << cell(report.xi_norm, i) << ',' << cell(report.orbital, i) << ','
        << cell(report.l2_residual, i) << ',' << cell(report.energy_residual, i)
        << ',' << cell(report.momentum_residual, i) << '\n';
  }
}

std::string drift_report_json(const DriftReport& report, int indent) {
  ordered_json J = ordered_json::array();
  for (const auto& row : report.J) J.push_back(numbers(row));
  ordered_json doc{
      {"schema_version", DriftReport::kSchemaVersion},
      {"config", config_json(report.config)},
      {"dt", report.dt},
      {"t_end", report.t_end},
      {"steps", report.steps},
      {"normal_coordinates", report.normal_coordinates},
      {"status", to_string(report.status)},
      {"failure_time", optional_number(report.failure_time)},
      {"failure_message", report.failure_message},
      {"bound_violated", report.bound_violated},
      {"c_hat", number(report.c_hat)},
      {"C_hat", number(report.C_hat)},
      {"sandwich_violations", report.sandwich_violations},
      {"l2_bound_violations", report.l2_bound_violations},
      {"growth_rate", optional_number(report.growth_rate)},
      {"expected_growth_rate", optional_number(report.expected_growth_rate)},
      {"time_to_10x", optional_number(report.time_to_10x)},
      {"growth_factor", number(report.growth_factor)},
      {"times", numbers(report.times)},
      {"shells", report.shells},
      {"J", J},
      {"D", numbers(report.D)},
      {"xi_norm", numbers(report.xi_norm)},
      {"w_norm", numbers(report.w_norm)},
      {"orbital", numbers(report.orbital)},
      {"l2_residual", numbers(report.l2_residual)},
      {"energy_residual", numbers(report.energy_residual)},
      {"momentum_residual", numbers(report.momentum_residual)}};
  return doc.dump(indent);
}

void write_certificate_csv(std::ostream& out, const RhoScanTable& table) {
  out << "rho,r,cutoff,alpha,gamma_hat,worst_m,worst_n,worst_value\n";
  for (const auto& row : table.rows) {
    out << format_double(row.rho) << ',';
    if (row.certificate) {
      const auto& c = *row.certificate;
      out << c.max_order << ',' << c.shell_cutoff << ',' << format_double(c.alpha)
          << ',' << format_double(c.gamma_hat) << ',' << join_shells(c.worst.m)
          << ',' << join_shells(c.worst.n) << ',' << format_double(c.worst.value);
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
}

std::string certificate_json(const RhoScanTable& table, int indent) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r{{"rho", row.rho}, {"pass", row.pass}, {"reason", row.reason}};
    if (row.certificate) {
      const auto& c = *row.certificate;
      r["certificate"] = ordered_json{{"rho", c.rho},
                                      {"lambda", c.lambda},
                                      {"r", c.max_order},
                                      {"cutoff", c.shell_cutoff},
                                      {"alpha", c.alpha},
                                      {"gamma_hat", number(c.gamma_hat)},
                                      {"records", c.records},
                                      {"worst", record_json(c.worst)}};
    } else {
      r["certificate"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  ordered_json doc{{"gamma_floor", table.gamma_floor},
                   {"pass_fraction", table.pass_fraction},
                   {"rows", rows}};
  return doc.dump(indent);
}

}  // namespace nlsplane
