#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rch/errors.hpp"

namespace {

const char* kFooter = R"(Config: a JSON file with the sections system, params, initial, run, gamma,
control and tolerances. See README.md for the field list.

Output files (under --out):
  simulate          trajectory.csv, simulate_report.txt
  hj-check          hj_report.txt
  equivalence-demo  equivalence.csv, equivalence_report.txt
  bracket-verify    bracket_report.txt

trajectory.csv columns, in order:
  t, pi1, pi2, pi3, [gamma1, gamma2, gamma3], [theta1..thetak], [l1..lk],
  energy, then the Casimirs (pi_norm_sq on so(3)*; pi_dot_gamma, gamma_norm_sq
  on se(3)*). Bracketed groups appear only when the system has them.

Exit codes: 0 ok, 1 check failed, 2 bad config or arguments,
  3 closedness gate rejected the section, 4 section off the momentum level,
  5 blow-up or singular transport.)";

}  // namespace

int main(int argc, char** argv) {
  using namespace rch::cli;
  CLI::App app{"Simulate and check controlled Hamiltonian systems on SO(3) and SE(3)."};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool quiet = false;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Seed (overrides run.seed)")->capture_default_str();
  app.add_flag("--quiet", quiet, "Only print errors");
  app.fallthrough();

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const ScenarioConfig&, const Options&, std::ostream&);
  };
  const Command commands[] = {
      {"simulate", "Integrate the reduced dynamics and report invariant drift", cmd_simulate},
      {"hj-check", "Evaluate the Hamilton-Jacobi residuals of a one-form section", cmd_hj_check},
      {"equivalence-demo", "Compare a matched system with its transported target", cmd_equivalence_demo},
      {"bracket-verify", "Check the Poisson bracket axioms on random polynomials", cmd_bracket_verify},
  };
  for (const Command& c : commands)
    app.add_subcommand(c.name, c.help)->add_option("--config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    ScenarioConfig config = load_config(config_path);
    Options options;
    options.out = out_dir;
    options.seed = seed_opt->count() ? seed : config.run.seed.value_or(0);
    options.quiet = quiet;
    for (const Command& c : commands) {
      if (app.got_subcommand(c.name)) return c.run(config, options, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kConfigError;
}
