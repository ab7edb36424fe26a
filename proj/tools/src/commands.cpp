#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "nlsplane/errors.hpp"
#include "nlsplane/report_io.hpp"
#include "nlsplane/resonance.hpp"
#include "nlsplane/version.hpp"
#include "nlsplane_cli/cli.hpp"

namespace nlsplane::cli {

namespace fs = std::filesystem;

std::filesystem::path default_output_dir() {
  const char* env = std::getenv(kOutputEnv);
  if (env != nullptr && *env != '\0') return fs::path(env);
  return fs::path("nlsplane-out");
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
  nlohmann::ordered_json doc{{"command", manifest.command},
                             {"config_path", manifest.config_path},
                             {"output_dir", manifest.output_dir},
                             {"version", manifest.version},
                             {"wall_clock_seconds", manifest.wall_clock_seconds},
                             {"steps", manifest.steps},
                             {"files", manifest.files}};
  const fs::path tmp = dir / "manifest.json.tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << doc.dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, dir / "manifest.json");
}

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

template <class Writer>
void write_stream(const fs::path& path, Writer&& writer) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  writer(f);
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

fs::path prepare_output(const RunOptions& opts) {
  fs::path dir = opts.out.empty() ? default_output_dir() : opts.out;
  fs::create_directories(dir);
  // A stale manifest would mark the new, still incomplete run as finished.
  fs::remove(dir / "manifest.json");
  return dir;
}

RunManifest start_manifest(const char* command, const RunOptions& opts,
                           const fs::path& dir) {
  RunManifest m;
  m.command = command;
  m.config_path = opts.config.string();
  m.output_dir = dir.string();
  m.version = kVersion;
  return m;
}

}  // namespace

int cmd_simulate(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const auto started = Clock::now();
  SimulateConfig cfg;
  try {
    cfg = parse_simulate_config(read_file(opts.config));
  } catch (const ConfigError& e) {
    err << "simulate: invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  const ExperimentConfig& base = cfg.experiment;

  try {
    const fs::path dir = prepare_output(opts);
    RunManifest manifest = start_manifest("simulate", opts, dir);
    int code = kExitOk;

    if (cfg.screen && base.stable_regime()) {
      const ScreenConfig& s = *cfg.screen;
      const RhoScanTable table = rho_grid_scan({base.rho}, base.lambda, s.r,
                                               s.cutoff, s.alpha, s.gamma_floor);
      write_text(dir / "screen.json", certificate_json(table) + "\n");
      manifest.files.push_back("screen.json");
      const RhoScanRow& row = table.rows.front();
      out << "screen: rho " << format_double(base.rho) << ' '
          << (row.pass ? "passes" : "fails") << " the resonance screen";
      if (row.certificate) out << " (gamma_hat " << format_double(row.certificate->gamma_hat) << ")";
      out << '\n';
      if (!row.pass) err << "simulate: warning: " << row.reason << '\n';
    }

    const bool unstable = !base.stable_regime();
    if (unstable && !opts.allow_instability) {
      err << "simulate: 1 + 2 lambda rho^2 <= 0 (unstable plane wave); running "
             "the negative control, pass --allow-instability to accept it\n";
      code = kExitRunFailed;
    }

    std::vector<ExperimentConfig> configs;
    if (cfg.seeds.empty()) {
      configs.push_back(base);
    } else {
      for (auto seed : cfg.seeds) {
        configs.push_back(base);
        configs.back().seed = seed;
      }
    }
    const auto items = run_batch(configs, opts.threads);

    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string stem = "drift_seed" + std::to_string(configs[i].seed);
      if (!items[i].report) {
        err << "simulate: seed " << configs[i].seed << " failed: " << items[i].error
            << '\n';
        code = kExitRunFailed;
        continue;
      }
      const DriftReport& r = *items[i].report;
      write_stream(dir / (stem + ".csv"), [&](std::ostream& f) { write_drift_csv(f, r); });
      write_text(dir / (stem + ".json"), drift_report_json(r) + "\n");
      manifest.files.push_back(stem + ".csv");
      manifest.files.push_back(stem + ".json");
      manifest.steps += r.steps;

      out << "seed " << configs[i].seed << ": steps " << r.steps << ", status "
          << to_string(r.status);
      if (r.normal_coordinates) {
        out << ", max D " << format_double(r.max_D()) << ", max xi_norm "
            << format_double(r.max_xi_norm());
      } else {
        out << ", growth factor " << format_double(r.growth_factor);
      }
      out << '\n';

      const bool failed = r.status != RunStatus::ok || r.bound_violated;
      if (failed) {
        err << "simulate: seed " << configs[i].seed
            << (r.status != RunStatus::ok ? ": run aborted: " + r.failure_message
                                          : std::string(": norm bound violated"))
            << '\n';
        if (!opts.allow_instability) code = kExitRunFailed;
      }
    }

    manifest.wall_clock_seconds =
        std::chrono::duration<double>(Clock::now() - started).count();
    write_manifest(dir, manifest);
    return code;
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitRunFailed;
  }
}

int cmd_scan(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const auto started = Clock::now();
  ScanConfig cfg;
  try {
    cfg = parse_scan_config(read_file(opts.config));
  } catch (const ConfigError& e) {
    err << "scan: invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  try {
    const fs::path dir = prepare_output(opts);
    RunManifest manifest = start_manifest("scan", opts, dir);
    const RhoScanTable table =
        rho_grid_scan(cfg.rho, cfg.lambda, cfg.r, cfg.cutoff, cfg.alpha,
                      cfg.gamma_floor, std::max(1u, opts.threads));
    write_stream(dir / "certificate.csv",
                 [&](std::ostream& f) { write_certificate_csv(f, table); });
    write_text(dir / "certificate.json", certificate_json(table) + "\n");
    manifest.files = {"certificate.csv", "certificate.json"};
    for (const auto& row : table.rows) {
      out << "rho " << format_double(row.rho) << ": " << (row.pass ? "pass" : "fail");
      if (row.certificate) out << ", gamma_hat " << format_double(row.certificate->gamma_hat);
      if (!row.reason.empty()) out << " (" << row.reason << ")";
      out << '\n';
    }
    out << "pass fraction " << format_double(table.pass_fraction) << '\n';
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(Clock::now() - started).count();
    write_manifest(dir, manifest);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "scan: " << e.what() << '\n';
    return kExitRunFailed;
  }
}

}  // namespace nlsplane::cli
