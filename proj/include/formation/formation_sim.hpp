#pragma once

#include "formation/bearing_rigidity.hpp"
#include "formation/psd_lift.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace formation {

enum class Integrator { Geodesic, FirstOrder };

std::string to_string(Integrator integrator);
// Accepts "geodesic" and "first_order"; throws InvalidConfigError otherwise.
Integrator parse_integrator(const std::string& name);

struct SimConfig {
  FormationGraph graph;
  NetworkState initial;
  double eps = 0.01;
  double w_lin = 1.0;
  double w_ang = 1.0;
  double k_pos = 1.0;
  long max_steps = 50000;
  double tol_potential = 1e-6;
  Integrator integrator = Integrator::Geodesic;
  std::uint64_t seed = 0;

  // Throws InvalidConfigError.
  void validate() const;
};

struct ControlRecord {
  std::vector<AgentControl> u;
  // (Z_next - Z_prev) / eps per agent; diagnostic only.
  std::vector<Mat4> lifted_omega;
  // <A^dagger(M_i), Z_next> per agent.
  std::vector<double> lift_objective;
  double potential = 0.0;
  double energy_lin = 0.0;  // 1/2 sum w_lin |v|^2
  double energy_ang = 0.0;  // 1/2 sum w_ang |w|^2
};

enum class Termination { Converged, MaxSteps };

/**
 * states[k] is the network at step k, controls[k] the control computed
 * there and potentials[k] its bearing potential. The control at the final
 * state is computed for reporting but not applied.
 */
struct Trajectory {
  std::vector<NetworkState> states;
  std::vector<ControlRecord> controls;
  std::vector<double> potentials;
  // control_norms[k][i] = sqrt(|v_i|^2 + |w_i|^2) at step k.
  std::vector<std::vector<double>> control_norms;
  Termination termination = Termination::MaxSteps;

  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
};

// sum over edges measured by `agent` of pbar_ij b*_ij^T.
Mat3 attitude_cost(const FormationGraph& g, const NetworkState& s, int agent);

// Lift point of an attitude: eta eta^T with eta the top eigenvector of
// A^dagger(R). A of the result reproduces R.
LiftPoint lift_attitude(const LiftGenerators& gen, const Rotation& r);

ControlRecord control_step(const SimConfig& cfg, const NetworkState& s,
                           const LiftGenerators& gen = default_generators());

NetworkState integrate(const SimConfig& cfg, const NetworkState& s, const ControlRecord& u);

// Throws DivergedError when the potential exceeds 1e6 times its initial
// value.
Trajectory run(const SimConfig& cfg, const LiftGenerators& gen = default_generators());

}  // namespace formation
