#include "formation/commands.hpp"

#include "formation/convex_solver.hpp"
#include "formation/export.hpp"
#include "formation/formation_sim.hpp"
#include "formation/scenario.hpp"
#include "formation/verify.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace formation::cli {

namespace fs = std::filesystem;

namespace {

const Eigen::IOFormat kMatrixFormat(6, 0, "  ", "\n", "  [", "]");

void print_warnings(const Scenario& s, std::ostream& err) {
  for (const auto& w : s.warnings) err << "warning: " << w << '\n';
}

// Throws std::runtime_error naming the path on failure.
template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  writer(f);
  f.flush();
  if (!f) throw std::runtime_error("error writing '" + path.string() + "'");
}

}  // namespace

int solve_attitude(const std::string& scenario_path, int agent, std::ostream& out,
                   std::ostream& err) {
  Scenario scenario;
  SimConfig cfg;
  try {
    scenario = load_scenario(scenario_path);
    cfg = scenario.to_config();
  } catch (const FormationError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  print_warnings(scenario, err);
  if (agent < 1 || agent > scenario.agents) {
    err << "error: agent " << agent << " out of range 1.." << scenario.agents << '\n';
    return kInvalidAgent;
  }

  const LiftGenerators& gen = default_generators();
  Mat3 m;
  try {
    m = attitude_cost(cfg.graph, cfg.initial, agent - 1);
  } catch (const CoincidentAgentsError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  const LinearLiftSolution sol = solve_linear_lift(gen, m);
  const Mat3 r = lift_project(gen, sol.Z_star);

  out << std::setprecision(10);
  out << "agent " << agent << "\n";
  out << "Z* =\n" << sol.Z_star.matrix().format(kMatrixFormat) << "\n";
  out << "R* = A(Z*) =\n" << r.format(kMatrixFormat) << "\n";
  out << "objective <M, R*> = " << inner(m, r) << "\n";
  out << "top eigenvalue = " << sol.top_eigenvalue << "\n";
  out << "spectral gap = " << sol.spectral_gap << "\n";
  out << "unique = " << (sol.unique ? "true" : "false") << "\n";
  return kOk;
}

int simulate(const std::string& scenario_path, const std::string& out_dir,
             const SimulateOverrides& overrides, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  SimConfig cfg;
  try {
    scenario = load_scenario(scenario_path);
    if (overrides.max_steps) scenario.max_steps = *overrides.max_steps;
    if (overrides.eps) scenario.eps = *overrides.eps;
    cfg = scenario.to_config();
    cfg.validate();
  } catch (const FormationError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  print_warnings(scenario, err);

  Trajectory traj;
  const auto start = std::chrono::steady_clock::now();
  try {
    traj = run(cfg);
  } catch (const DivergedError& e) {
    err << "error: " << e.what() << '\n';
    return kDiverged;
  } catch (const FormationError& e) {
    // Agents colliding mid-run are reported as a failed run.
    err << "error: " << e.what() << '\n';
    return kDiverged;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir(out_dir);
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create directory '" + dir.string() + "'");
    write_file(dir / "trajectory.csv", [&](std::ostream& f) { write_trajectory_csv(f, traj); });
    write_file(dir / "potential.csv", [&](std::ostream& f) { write_potential_csv(f, traj); });
    write_file(dir / "controls.csv", [&](std::ostream& f) { write_controls_csv(f, traj); });
    write_file(dir / "formation.svg", [&](std::ostream& f) {
      write_formation_svg(f, cfg.graph, positions_of(traj.states.front()), scenario.target_positions,
                          positions_of(traj.states.back()));
    });
    write_file(dir / "potential.svg", [&](std::ostream& f) { write_potential_svg(f, traj.potentials); });
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  const bool converged = traj.termination == Termination::Converged;
  out << (converged ? "converged" : "not converged") << " after " << traj.steps() << " steps ("
      << std::setprecision(3) << seconds << " s)\n"
      << std::setprecision(6) << "potential: " << traj.potentials.front() << " -> "
      << traj.potentials.back() << "\n"
      << "output: " << dir.string() << "\n";
  return converged ? kOk : kNotConverged;
}

int verify(VerifyMode mode, std::ostream& out, std::ostream& err, const LiftGenerators& gen,
           bool color) {
  const long trials = verify_trials(mode);
  const char* green = color ? "\033[32m" : "";
  const char* red = color ? "\033[31m" : "";
  const char* reset = color ? "\033[0m" : "";

  const auto start = std::chrono::steady_clock::now();
  const std::vector<SuiteResult> results = run_property_suites(gen, trials);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all = true;
  std::string first_counterexample;
  for (const auto& r : results) {
    out << (r.passed ? green : red) << (r.passed ? "PASS" : "FAIL") << reset << "  "
        << std::left << std::setw(28) << r.name << std::right << " trials=" << r.trials
        << " worst=" << std::setprecision(3) << r.worst << '\n';
    if (!r.passed && all) first_counterexample = r.name + ": " + r.counterexample;
    all = all && r.passed;
  }
  out << (all ? "all suites passed" : "suite failure") << " (" << std::setprecision(3) << seconds
      << " s)\n";
  if (!all) {
    err << "counterexample " << first_counterexample << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace formation::cli
