#include "formation/verify.hpp"

#include "formation/convex_solver.hpp"
#include "formation/lie_so3.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

namespace formation {

namespace {

nlohmann::json to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

// Chain plus a few chords so that every agent measures and is measured.
FormationGraph test_graph(Rng& rng, int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({n - 1, 0});
  if (n > 3) edges.push_back({1, n - 1});
  std::vector<Vec3> desired;
  for (std::size_t k = 0; k < edges.size(); ++k) desired.push_back(random_vec3(rng).normalized());
  return FormationGraph(n, edges, desired);
}

SuiteResult adjoint_suite(const LiftGenerators& gen, long trials, Rng& rng) {
  SuiteResult r;
  r.name = "adjoint-identity";
  for (long t = 0; t < trials; ++t) {
    const Mat4 z = random_symmetric4(rng);
    const Mat3 y = random_mat3(rng);
    const double err = std::abs(inner(lift_project(gen, z), y) - inner(z, lift_adjoint(gen, y)));
    r.worst = std::max(r.worst, err);
    ++r.trials;
    if (!(err <= 1e-12)) {
      r.passed = false;
      r.counterexample = nlohmann::json{{"Z", to_json(z)}, {"Y", to_json(y)}, {"error", err}}.dump();
      break;
    }
  }
  return r;
}

SuiteResult extreme_point_suite(const LiftGenerators& gen, long trials, Rng& rng) {
  SuiteResult r;
  r.name = "extreme-point-rotation";
  for (long t = 0; t < trials; ++t) {
    const Vec4 eta = random_unit_vec4(rng);
    const Mat3 x = lift_project(gen, Mat4(eta * eta.transpose()));
    const double orth = Rotation::orthogonality_residual(x);
    const double det = std::abs(x.determinant() - 1.0);
    r.worst = std::max({r.worst, orth, det});
    ++r.trials;
    if (!(orth <= 1e-9 && det <= 1e-9)) {
      r.passed = false;
      r.counterexample = nlohmann::json{{"eta", {eta[0], eta[1], eta[2], eta[3]}},
                                        {"A(eta eta^T)", to_json(x)},
                                        {"orthogonality_residual", orth},
                                        {"det", x.determinant()}}
                             .dump();
      break;
    }
  }
  return r;
}

SuiteResult fd_suite(long trials, Rng& rng) {
  SuiteResult r;
  r.name = "rigidity-finite-difference";
  for (long t = 0; t < trials; ++t) {
    const int n = 3 + static_cast<int>(t % 5);
    const FormationGraph g = test_graph(rng, n);
    const NetworkState s = random_network_state(rng, n);
    const FiniteDifferenceError err = rigidity_fd_error(g, s);
    r.worst = std::max({r.worst, err.position, err.attitude});
    ++r.trials;
    if (!(err.position <= 1e-5 && err.attitude <= 1e-5)) {
      nlohmann::json pos = nlohmann::json::array();
      for (const auto& a : s.agents) pos.push_back({a.p.x(), a.p.y(), a.p.z()});
      r.passed = false;
      r.counterexample = nlohmann::json{{"agents", n},
                                        {"positions", pos},
                                        {"position_error", err.position},
                                        {"attitude_error", err.attitude}}
                             .dump();
      break;
    }
  }
  return r;
}

SuiteResult optimality_suite(const LiftGenerators& gen, long trials, Rng& rng) {
  SuiteResult r;
  r.name = "rotation-optimality";
  constexpr int kRotationsPerCase = 100;
  for (long t = 0; t < trials; ++t) {
    const Mat3 m = random_mat3(rng);
    const LinearLiftSolution sol = solve_linear_lift(gen, m);
    const Mat3 best = lift_project(gen, sol.Z_star);
    const double value = inner(m, best);
    ++r.trials;
    for (int k = 0; k < kRotationsPerCase; ++k) {
      const Rotation q = random_rotation(rng);
      const double margin = inner(m, q.matrix()) - value;
      r.worst = std::max(r.worst, margin);
      if (!(margin <= 1e-9)) {
        r.passed = false;
        r.counterexample = nlohmann::json{{"M", to_json(m)},
                                          {"R_lift", to_json(best)},
                                          {"R_better", to_json(q.matrix())},
                                          {"margin", margin}}
                               .dump();
        return r;
      }
    }
  }
  return r;
}

}  // namespace

Vec3 random_vec3(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec3 v;
  for (int c = 0; c < 3; ++c) v[c] = u(rng);
  return v;
}

Vec4 random_unit_vec4(Rng& rng) {
  std::normal_distribution<double> n;
  Vec4 v;
  do {
    for (int c = 0; c < 4; ++c) v[c] = n(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Rotation random_rotation(Rng& rng) {
  return exp_so3(random_vec3(rng, -std::numbers::pi, std::numbers::pi));
}

Mat3 random_mat3(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 m;
  for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = u(rng);
  return m;
}

Mat4 random_symmetric4(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

Mat4 random_lift_point(Rng& rng, int rank) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat4 z = Mat4::Zero();
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    const double w = u(rng) + 1e-3;
    const Vec4 eta = random_unit_vec4(rng);
    z += w * eta * eta.transpose();
    total += w;
  }
  return z / total;
}

NetworkState random_network_state(Rng& rng, int agents, double scale) {
  NetworkState s;
  for (;;) {
    s.agents.clear();
    for (int i = 0; i < agents; ++i) s.agents.push_back({random_vec3(rng, -scale, scale), random_rotation(rng)});
    bool separated = true;
    for (int i = 0; i < agents && separated; ++i)
      for (int j = i + 1; j < agents && separated; ++j)
        separated = (s.agents[i].p - s.agents[j].p).norm() >= 0.1 * scale;
    if (separated) return s;
  }
}

FiniteDifferenceError rigidity_fd_error(const FormationGraph& g, const NetworkState& s, double h) {
  const Eigen::MatrixXd jac = rigidity_matrix(g, s);
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd fd = Eigen::MatrixXd::Zero(jac.rows(), jac.cols());
  for (Eigen::Index a = 0; a < n; ++a) {
    for (int c = 0; c < 3; ++c) {
      NetworkState plus = s;
      NetworkState minus = s;
      plus.agents[a].p[c] += h;
      minus.agents[a].p[c] -= h;
      fd.col(3 * a + c) = (stack(rigidity_function(g, plus)) - stack(rigidity_function(g, minus))) / (2.0 * h);

      plus = s;
      minus = s;
      plus.agents[a].R = s.agents[a].R * exp_so3(Vec3(h * Vec3::Unit(c)));
      minus.agents[a].R = s.agents[a].R * exp_so3(Vec3(-h * Vec3::Unit(c)));
      fd.col(3 * n + 3 * a + c) =
          (stack(rigidity_function(g, plus)) - stack(rigidity_function(g, minus))) / (2.0 * h);
    }
  }
  const auto rel = [](const Eigen::MatrixXd& approx, const Eigen::MatrixXd& exact) {
    const double denom = exact.norm();
    return denom > 0.0 ? (approx - exact).norm() / denom : approx.norm();
  };
  return {rel(fd.leftCols(3 * n), jac.leftCols(3 * n)), rel(fd.rightCols(3 * n), jac.rightCols(3 * n))};
}

std::vector<SuiteResult> run_property_suites(const LiftGenerators& gen, long trials,
                                             std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SuiteResult> out;
  out.push_back(adjoint_suite(gen, trials, rng));
  out.push_back(extreme_point_suite(gen, trials, rng));
  out.push_back(fd_suite(trials, rng));
  out.push_back(optimality_suite(gen, trials, rng));
  return out;
}

}  // namespace formation
