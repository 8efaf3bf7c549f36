#pragma once

#include "formation/formation_sim.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace formation {

/**
 * Raised for malformed scenario files. `line()` is set for JSON syntax
 * errors, `key()` for schema violations.
 */
class ScenarioError : public FormationError {
 public:
  ScenarioError(std::string message, std::string key = {}, int line = 0);

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

struct BoundingBox {
  Vec3 min = Vec3::Constant(-1.0);
  Vec3 max = Vec3::Constant(1.0);
};

/**
 * In-memory form of a scenario file. Agent indices are 0-based here and
 * 1-based in the file; random initial conditions are resolved at parse
 * time so a Scenario always holds explicit values.
 */
struct Scenario {
  std::string description;
  int agents = 0;
  std::vector<Edge> edges;
  std::vector<Vec3> desired_bearings;  // unit length
  std::vector<Vec3> target_positions;  // optional, used for plotting only
  std::vector<Vec3> initial_positions;
  std::vector<Vec3> initial_attitudes; // axis-angle
  double eps = 0.01;
  double w_lin = 1.0;
  double w_ang = 1.0;
  double k_pos = 1.0;
  double tol_potential = 1e-6;
  long max_steps = 50000;
  Integrator integrator = Integrator::Geodesic;
  std::uint64_t seed = 0;

  // Non-fatal notes produced while parsing, e.g. renormalized bearings.
  std::vector<std::string> warnings;

  SimConfig to_config() const;
};

// Parses JSON text (comments allowed). Throws ScenarioError.
Scenario parse_scenario(const std::string& text);
// Throws ScenarioError, including when the file cannot be read.
Scenario load_scenario(const std::string& path);

// JSON with every value explicit; parse_scenario(serialize_scenario(s))
// reproduces s.
std::string serialize_scenario(const Scenario& s);

// Uniform rotations as axis-angle vectors, deterministic in `seed`.
std::vector<Vec3> random_attitudes(std::size_t count, std::uint64_t seed);
std::vector<Vec3> random_positions(std::size_t count, std::uint64_t seed, const BoundingBox& box);

}  // namespace formation
