#include <iostream>

#include "CLI11.hpp"
#include "nlsplane/version.hpp"
#include "nlsplane_cli/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = nlsplane::cli;

  CLI::App app{"Plane-wave stability toolkit for the cubic NLS on the torus"};
  app.set_version_flag("--version", std::string(nlsplane::kVersion));
  app.require_subcommand(1);

  cli::RunOptions run;
  cli::VerifyOptions verify;
  std::string fault;

  auto* simulate = app.add_subcommand("simulate", "Integrate a perturbed plane wave and report super-action drift");
  auto* scan = app.add_subcommand("scan", "Certify small divisors over a grid of rho values");
  for (auto* sub : {simulate, scan}) {
    sub->add_option("--config", run.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", run.out,
                    std::string("Output directory (default: $") + cli::kOutputEnv + " or nlsplane-out)");
    sub->add_option("--threads", run.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  }
  simulate->add_flag("--allow-instability", run.allow_instability,
                     "Accept unstable or bound-violating runs with exit code 0");

  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in invariant suite");
  verify_cmd->add_option("--inject-fault", fault, "Test hook")
      ->check(CLI::IsMember({"diagonalization"}))
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Usage errors share the invalid-config exit code.
    return code == 0 ? 0 : cli::kExitInvalidConfig;
  }

  if (*simulate) return cli::cmd_simulate(run, std::cout, std::cerr);
  if (*scan) return cli::cmd_scan(run, std::cout, std::cerr);
  verify.inject_diagonalization_fault = fault == "diagonalization";
  return cli::cmd_verify(verify, std::cout, std::cerr);
}
