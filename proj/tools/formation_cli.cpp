#include "formation/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <unistd.h>

int main(int argc, char** argv) {
  namespace cli = formation::cli;

  CLI::App app{"Bearing-only formation control on SE(3) by convex relaxation of SO(3)"};
  app.require_subcommand(1);

  std::string scenario;
  int agent = 1;
  auto* solve = app.add_subcommand("solve-attitude", "Solve the relaxed attitude problem for one agent");
  solve->add_option("scenario", scenario, "Scenario file (JSON)")->required();
  solve->add_option("--agent", agent, "Agent index, 1-based")->required();

  std::string out_dir;
  long max_steps = 0;
  double eps = 0.0;
  auto* sim = app.add_subcommand("simulate", "Run the closed-loop formation simulation");
  sim->add_option("scenario", scenario, "Scenario file (JSON)")->required();
  sim->add_option("--out", out_dir, "Output directory")->required();
  auto* max_steps_opt = sim->add_option("--max-steps", max_steps, "Override max_steps");
  auto* eps_opt = sim->add_option("--eps", eps, "Override the step size");

  bool fast = false;
  bool full = false;
  auto* ver = app.add_subcommand("verify", "Run the randomized property suites");
  auto* fast_flag = ver->add_flag("--fast", fast, "100 trials per suite (default)");
  ver->add_flag("--full", full, "100000 trials per suite")->excludes(fast_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kParseError;
  }

  if (solve->parsed()) return cli::solve_attitude(scenario, agent, std::cout, std::cerr);
  if (sim->parsed()) {
    cli::SimulateOverrides overrides;
    if (*max_steps_opt) overrides.max_steps = max_steps;
    if (*eps_opt) overrides.eps = eps;
    return cli::simulate(scenario, out_dir, overrides, std::cout, std::cerr);
  }
  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
  return cli::verify(full ? cli::VerifyMode::Full : cli::VerifyMode::Fast, std::cout, std::cerr,
                     formation::default_generators(), color);
}
