#include "formation/formation_sim.hpp"

#include "formation/convex_solver.hpp"
#include "formation/lie_so3.hpp"
#include "formation/sym_eigen.hpp"

#include <cmath>
#include <sstream>

namespace formation {

std::string to_string(Integrator integrator) {
  return integrator == Integrator::Geodesic ? "geodesic" : "first_order";
}

Integrator parse_integrator(const std::string& name) {
  if (name == "geodesic") return Integrator::Geodesic;
  if (name == "first_order") return Integrator::FirstOrder;
  throw InvalidConfigError("unknown integrator '" + name + "' (expected geodesic or first_order)");
}

void SimConfig::validate() const {
  std::ostringstream os;
  if (!(eps > 0.0) || !std::isfinite(eps)) os << "eps must be positive";
  else if (!(w_lin > 0.0) || !(w_ang > 0.0)) os << "energy weights must be positive";
  else if (!(k_pos > 0.0)) os << "k_pos must be positive";
  else if (max_steps < 1) os << "max_steps must be at least 1";
  else if (!(tol_potential > 0.0)) os << "tol_potential must be positive";
  else if (static_cast<int>(initial.size()) != graph.num_agents())
    os << "initial state has " << initial.size() << " agents, graph has " << graph.num_agents();
  if (!os.str().empty()) throw InvalidConfigError(os.str());
}

Mat3 attitude_cost(const FormationGraph& g, const NetworkState& s, int agent) {
  Mat3 m = Mat3::Zero();
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges()[k];
    if (e.i != agent) continue;
    const Vec3 diff = s.agents[e.i].p - s.agents[e.j].p;
    const double dist = diff.norm();
    if (!(dist > kMinAgentDistance)) throw CoincidentAgentsError(k, e.i, e.j, dist);
    m += (diff / dist) * g.desired()[k].transpose();
  }
  return m;
}

LiftPoint lift_attitude(const LiftGenerators& gen, const Rotation& r) {
  return LiftPoint::from_vector(eigen_sym(lift_adjoint(gen, r.matrix())).vectors.col(0));
}

ControlRecord control_step(const SimConfig& cfg, const NetworkState& s,
                           const LiftGenerators& gen) {
  const int n = cfg.graph.num_agents();
  const Eigen::VectorXd grad = potential_gradient(cfg.graph, s);

  ControlRecord rec;
  rec.u.resize(static_cast<std::size_t>(n));
  rec.lifted_omega.resize(static_cast<std::size_t>(n));
  rec.lift_objective.resize(static_cast<std::size_t>(n));
  rec.potential = potential(cfg.graph, s);

  for (int i = 0; i < n; ++i) {
    const AgentState& a = s.agents[static_cast<std::size_t>(i)];
    auto& u = rec.u[static_cast<std::size_t>(i)];

    StepProblem step;
    step.cost = lift_adjoint(gen, attitude_cost(cfg.graph, s, i));
    step.z_prev = lift_attitude(gen, a.R);
    step.weight = cfg.w_ang;
    step.eps = cfg.eps;
    const LiftPoint z_next = solve_regularized_step(step);

    const Rotation target = project_to_so3(lift_project(gen, z_next));
    u.w = log_so3_vec(a.R.transpose() * target) / cfg.eps;
    u.v = -(cfg.k_pos / cfg.w_lin) * (a.R.matrix().transpose() * grad.segment<3>(3 * i));

    rec.lifted_omega[static_cast<std::size_t>(i)] = (z_next.matrix() - step.z_prev.matrix()) / cfg.eps;
    rec.lift_objective[static_cast<std::size_t>(i)] = inner(step.cost, z_next.matrix());
  }

  const ControlEnergy e =
      control_energy(rec.u, cfg.w_lin * Mat3::Identity(), cfg.w_ang * Mat3::Identity());
  rec.energy_lin = e.linear;
  rec.energy_ang = e.angular;
  return rec;
}

NetworkState integrate(const SimConfig& cfg, const NetworkState& s, const ControlRecord& u) {
  NetworkState next = s;
  next.step = s.step + 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const AgentState& a = s.agents[i];
    const AgentControl& c = u.u[i];
    AgentState& b = next.agents[i];
    b.p = a.p + cfg.eps * (a.R * c.v);
    if (cfg.integrator == Integrator::Geodesic) {
      b.R = geodesic_step(a.R, c.w, cfg.eps);
    } else {
      b.R = project_to_so3(a.R.matrix() + cfg.eps * a.R.matrix() * hat(c.w));
    }
  }
  return next;
}

namespace {

std::vector<double> norms_of(const ControlRecord& rec) {
  std::vector<double> out;
  out.reserve(rec.u.size());
  for (const auto& u : rec.u) out.push_back(std::sqrt(u.v.squaredNorm() + u.w.squaredNorm()));
  return out;
}

}  // namespace

Trajectory run(const SimConfig& cfg, const LiftGenerators& gen) {
  cfg.validate();
  Trajectory traj;
  NetworkState state = cfg.initial;
  const double initial_potential = potential(cfg.graph, state);

  for (long k = 0;; ++k) {
    ControlRecord rec = control_step(cfg, state, gen);
    const double phi = rec.potential;
    if (!std::isfinite(phi) || phi > 1e6 * initial_potential) {
      throw DivergedError(k, phi, initial_potential);
    }
    traj.control_norms.push_back(norms_of(rec));
    traj.potentials.push_back(phi);
    traj.states.push_back(state);
    traj.controls.push_back(std::move(rec));

    if (phi <= cfg.tol_potential) {
      traj.termination = Termination::Converged;
      break;
    }
    if (k >= cfg.max_steps) {
      traj.termination = Termination::MaxSteps;
      break;
    }
    state = integrate(cfg, state, traj.controls.back());
  }
  return traj;
}

}  // namespace formation
