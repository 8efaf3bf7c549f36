#include "formation/bearing_rigidity.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace formation {

namespace {

// Shared by the per-edge and stacked evaluations so both round identically.
Vec3 edge_bearing(const Rotation& r, const Vec3& diff, double inv_dist) {
  return inv_dist * (r.matrix().transpose() * diff);
}

double checked_inverse_distance(const Vec3& diff, std::size_t edge, int i, int j) {
  const double dist = diff.norm();
  if (!(dist > kMinAgentDistance)) throw CoincidentAgentsError(edge, i, j, dist);
  return 1.0 / dist;
}

void check_state(const FormationGraph& g, const NetworkState& s) {
  if (static_cast<int>(s.size()) != g.num_agents()) {
    std::ostringstream os;
    os << "state has " << s.size() << " agents, graph has " << g.num_agents();
    throw InvalidGraphError(os.str());
  }
}

void check_spd(const Mat3& w, const char* name) {
  if (!w.allFinite() || (w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw NotSPDError(std::string(name) + " is not symmetric");
  }
  Eigen::LLT<Mat3> llt(w);
  if (llt.info() != Eigen::Success) {
    throw NotSPDError(std::string(name) + " is not positive definite");
  }
}

}  // namespace

FormationGraph::FormationGraph(int num_agents, std::vector<Edge> edges,
                               std::vector<Vec3> desired)
    : num_agents_(num_agents), edges_(std::move(edges)), desired_(std::move(desired)) {
  if (num_agents_ < 1) throw InvalidGraphError("graph needs at least one agent");
  if (edges_.size() != desired_.size()) {
    std::ostringstream os;
    os << edges_.size() << " edges but " << desired_.size() << " desired bearings";
    throw InvalidGraphError(os.str());
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    std::ostringstream os;
    if (e.i < 0 || e.i >= num_agents_ || e.j < 0 || e.j >= num_agents_) {
      os << "edge " << k + 1 << " references an agent outside 1.." << num_agents_;
    } else if (e.i == e.j) {
      os << "edge " << k + 1 << " is a self-loop on agent " << e.i + 1;
    } else if (!desired_[k].allFinite() || std::abs(desired_[k].norm() - 1.0) > 1e-12) {
      os << "desired bearing " << k + 1 << " is not a unit vector";
    }
    if (!os.str().empty()) throw InvalidGraphError(os.str());
  }
}

Eigen::MatrixXd FormationGraph::incidence() const {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(num_agents_, static_cast<Eigen::Index>(num_edges()));
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    e(edges_[k].i, static_cast<Eigen::Index>(k)) = 1.0;
    e(edges_[k].j, static_cast<Eigen::Index>(k)) = -1.0;
  }
  return e;
}

Eigen::MatrixXd FormationGraph::attitude_incidence() const {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(num_agents_, static_cast<Eigen::Index>(num_edges()));
  for (std::size_t k = 0; k < edges_.size(); ++k) e(edges_[k].i, static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

Vec3 bearing(const AgentState& from, const AgentState& to) {
  const Vec3 diff = from.p - to.p;
  const double d = checked_inverse_distance(diff, CoincidentAgentsError::npos, -1, -1);
  return edge_bearing(from.R, diff, d);
}

BearingStack rigidity_function(const FormationGraph& g, const NetworkState& s) {
  check_state(g, s);
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd positions(n, 3);
  for (Eigen::Index a = 0; a < n; ++a) positions.row(a) = s.agents[a].p.transpose();

  // Row k of E^T p is p_i - p_j.
  const Eigen::MatrixXd diffs = g.incidence().transpose() * positions;

  BearingStack out(g.num_edges());
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges()[k];
    const Vec3 diff = diffs.row(static_cast<Eigen::Index>(k)).transpose();
    out[k] = edge_bearing(s.agents[e.i].R, diff, checked_inverse_distance(diff, k, e.i, e.j));
  }
  return out;
}

Eigen::VectorXd stack(const BearingStack& b) {
  Eigen::VectorXd out(3 * static_cast<Eigen::Index>(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) out.segment<3>(3 * static_cast<Eigen::Index>(k)) = b[k];
  return out;
}

Eigen::MatrixXd rigidity_matrix(const FormationGraph& g, const NetworkState& s) {
  check_state(g, s);
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3 * m, 6 * n);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Edge& e = g.edges()[static_cast<std::size_t>(k)];
    const AgentState& si = s.agents[e.i];
    const Vec3 diff = si.p - s.agents[e.j].p;
    const double d = checked_inverse_distance(diff, static_cast<std::size_t>(k), e.i, e.j);
    const Vec3 pbar = d * diff;
    const Mat3 rt = si.R.matrix().transpose();

    const Mat3 dp = d * rt * (Mat3::Identity() - pbar * pbar.transpose());
    jac.block<3, 3>(3 * k, 3 * e.i) += dp;
    jac.block<3, 3>(3 * k, 3 * e.j) -= dp;
    jac.block<3, 3>(3 * k, 3 * n + 3 * e.i) = rt * hat(pbar) * si.R.matrix();
  }
  return jac;
}

double potential(const FormationGraph& g, const NetworkState& s) {
  const BearingStack b = rigidity_function(g, s);
  double sum = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) sum += (g.desired()[k] - b[k]).squaredNorm();
  return 0.5 * sum;
}

Eigen::VectorXd potential_gradient(const FormationGraph& g, const NetworkState& s) {
  const Eigen::VectorXd err = stack(rigidity_function(g, s)) - stack(g.desired());
  return rigidity_matrix(g, s).transpose() * err;
}

ControlEnergy control_energy(const std::vector<AgentControl>& controls, const Mat3& w1,
                             const Mat3& w2) {
  check_spd(w1, "W1");
  check_spd(w2, "W2");
  ControlEnergy e;
  for (const auto& u : controls) {
    e.linear += 0.5 * u.v.dot(w1 * u.v);
    e.angular += 0.5 * u.w.dot(w2 * u.w);
  }
  return e;
}

double augmented_potential(const FormationGraph& g, const NetworkState& s,
                           const std::vector<AgentControl>& controls, const Mat3& w1,
                           const Mat3& w2) {
  const ControlEnergy e = control_energy(controls, w1, w2);
  return potential(g, s) + e.linear + e.angular;
}

}  // namespace formation
