#pragma once

#include "formation/bearing_rigidity.hpp"
#include "formation/psd_lift.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace formation {

using Rng = std::mt19937_64;

// Sampling helpers shared by the self-test, the unit tests and the
// acceptance suite.
Vec3 random_vec3(Rng& rng, double lo = -1.0, double hi = 1.0);
Vec4 random_unit_vec4(Rng& rng);
// exp_so3 of a skew matrix with uniformly random entries in [-pi, pi].
Rotation random_rotation(Rng& rng);
Mat3 random_mat3(Rng& rng);
Mat4 random_symmetric4(Rng& rng);
// Random point of the spectrahedron: a convex combination of `rank`
// random rank-one lift points.
Mat4 random_lift_point(Rng& rng, int rank);
// Agents at random positions in [-scale, scale]^3 with random attitudes;
// positions are resampled until every pair is at least 0.1 * scale apart.
NetworkState random_network_state(Rng& rng, int agents, double scale = 2.0);

struct FiniteDifferenceError {
  double position = 0.0;  // ||B_fd - B||_F / ||B||_F over the position block
  double attitude = 0.0;  // same over the attitude block
};

// Compares rigidity_matrix against central differences of
// rigidity_function, perturbing positions along coordinate axes and
// attitudes along R_i exp(t hat(e_c)).
FiniteDifferenceError rigidity_fd_error(const FormationGraph& g, const NetworkState& s,
                                        double h = 1e-6);

struct SuiteResult {
  std::string name;
  bool passed = true;
  long trials = 0;
  double worst = 0.0;          // largest violation margin observed
  std::string counterexample;  // JSON, first failing input
};

/**
 * Runs the randomized invariant suites against `gen`:
 *   adjoint-identity, extreme-point-rotation, rigidity-finite-difference,
 *   rotation-optimality.
 * Each suite draws `trials` random cases and stops at the first failure.
 */
std::vector<SuiteResult> run_property_suites(const LiftGenerators& gen, long trials,
                                             std::uint64_t seed = 20240901);

}  // namespace formation
