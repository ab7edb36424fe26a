#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlsplane/experiments.hpp"

namespace nlsplane::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvariantFailed = 1,
  kExitInvalidConfig = 2,
  kExitRunFailed = 3,
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "NLSPLANE_OUT";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optional resonance pre-screen of the configured rho.
struct ScreenConfig {
  int r = 3;
  int cutoff = 20;
  double alpha = 2.0;
  double gamma_floor = 1e-3;
};

struct SimulateConfig {
  ExperimentConfig experiment;
  // Runs one experiment per seed when non-empty (experiment.seed otherwise).
  std::vector<std::uint64_t> seeds;
  std::optional<ScreenConfig> screen;
};

struct ScanConfig {
  std::vector<double> rho;
  double lambda = 1.0;
  int r = 3;
  int cutoff = 20;
  double alpha = 2.0;
  double gamma_floor = 1e-3;
};

// Both parsers reject unknown keys, wrong types and values that fail
// validation, with a message naming the offending field.
SimulateConfig parse_simulate_config(std::string_view json_text);
ScanConfig parse_scan_config(std::string_view json_text);

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path out;  // empty: default_output_dir()
  unsigned threads = 1;
  bool allow_instability = false;
};

// $NLSPLANE_OUT when set and non-empty, "nlsplane-out" otherwise.
std::filesystem::path default_output_dir();

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string output_dir;
  std::string version;
  double wall_clock_seconds = 0.0;
  std::size_t steps = 0;
  std::vector<std::string> files;
};

// Writes manifest.json through a temporary file and a rename, so its presence
// marks a completed run.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

int cmd_simulate(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_scan(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  // Test hook: perturbs one S_n entry before the diagonalization checks.
  bool inject_diagonalization_fault = false;
};

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<InvariantResult> run_invariant_suite(const VerifyOptions& opts);

// Prints the pass/fail table; exit 1 naming the first failing invariant.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace nlsplane::cli
