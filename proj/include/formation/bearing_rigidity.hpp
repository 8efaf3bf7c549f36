#pragma once

#include "formation/lie_so3.hpp"
#include "formation/types.hpp"

#include <vector>

namespace formation {

// Directed constraint: agent `i` measures agent `j`. 0-based.
struct Edge {
  int i = 0;
  int j = 0;
  bool operator==(const Edge&) const = default;
};

/**
 * Interaction graph with one desired body-frame bearing per edge.
 *
 * The incidence matrix has +1 at the measuring agent and -1 at the measured
 * agent of each edge, so E^T p stacks p_i - p_j.
 */
class FormationGraph {
 public:
  FormationGraph() = default;
  // Throws InvalidGraphError on self-loops, out-of-range indices, a bearing
  // count that differs from the edge count, or non-unit desired bearings.
  FormationGraph(int num_agents, std::vector<Edge> edges, std::vector<Vec3> desired);

  int num_agents() const { return num_agents_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vec3>& desired() const { return desired_; }

  // N x m, entries in {-1, 0, +1}.
  Eigen::MatrixXd incidence() const;
  // N x m, +1 at the measuring agent of each edge only.
  Eigen::MatrixXd attitude_incidence() const;

 private:
  int num_agents_ = 0;
  std::vector<Edge> edges_;
  std::vector<Vec3> desired_;
};

struct AgentState {
  Vec3 p = Vec3::Zero();
  Rotation R;
};

struct NetworkState {
  std::vector<AgentState> agents;
  long step = 0;

  std::size_t size() const { return agents.size(); }
};

struct AgentControl {
  Vec3 v = Vec3::Zero();  // body-frame linear velocity
  Vec3 w = Vec3::Zero();  // body-frame angular velocity
};

// One unit bearing per edge, edge-list order.
using BearingStack = std::vector<Vec3>;

inline constexpr double kMinAgentDistance = 1e-9;

// R_i^T (p_i - p_j) / ||p_i - p_j||. Throws CoincidentAgentsError when the
// agents are closer than kMinAgentDistance.
Vec3 bearing(const AgentState& from, const AgentState& to);

BearingStack rigidity_function(const FormationGraph& g, const NetworkState& s);

// 3m-vector form of a BearingStack.
Eigen::VectorXd stack(const BearingStack& b);

/**
 * Jacobian of rigidity_function, 3m x 6N. Columns 0..3N-1 are the positions
 * of agents 0..N-1; columns 3N..6N-1 are body-frame attitude perturbations
 * R_i -> R_i exp(hat(t)) of agents 0..N-1.
 *
 * Per edge k = (i, j):
 *   d b / d p_i =  d_ij R_i^T P(pbar_ij),  d b / d p_j = -d b / d p_i
 *   d b / d t_i =  hat(b_ij) = R_i^T hat(pbar_ij) R_i
 * with P(x) = I - x x^T.
 */
Eigen::MatrixXd rigidity_matrix(const FormationGraph& g, const NetworkState& s);

// 1/2 sum_k ||b*_k - b_k||^2
double potential(const FormationGraph& g, const NetworkState& s);

// Gradient of potential() in the rigidity_matrix column layout:
// B^T (b - b*).
Eigen::VectorXd potential_gradient(const FormationGraph& g, const NetworkState& s);

// potential + 1/2 sum_i <W1 v_i, v_i> + 1/2 sum_i <W2 w_i, w_i>.
// Throws NotSPDError when either weight fails a Cholesky test.
double augmented_potential(const FormationGraph& g, const NetworkState& s,
                           const std::vector<AgentControl>& controls, const Mat3& w1,
                           const Mat3& w2);

// The energy terms of augmented_potential without the bearing part.
struct ControlEnergy {
  double linear = 0.0;
  double angular = 0.0;
};
ControlEnergy control_energy(const std::vector<AgentControl>& controls, const Mat3& w1,
                             const Mat3& w2);

}  // namespace formation
