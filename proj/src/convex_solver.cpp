#include "formation/convex_solver.hpp"

#include "formation/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace formation {

double default_tie_tolerance(double top_eigenvalue) {
  return 1e-8 * (1.0 + std::abs(top_eigenvalue));
}

LinearLiftSolution solve_linear_lift_cost(const Mat4& cost) {
  const SymEigen4 eig = eigen_sym(cost);
  LinearLiftSolution sol;
  sol.eta = eig.vectors.col(0).normalized();
  sol.Z_star = LiftPoint::from_vector(sol.eta);
  sol.top_eigenvalue = eig.values[0];
  sol.spectral_gap = eig.values[0] - eig.values[1];
  sol.unique = certify_unique(sol, default_tie_tolerance(sol.top_eigenvalue));
  return sol;
}

LinearLiftSolution solve_linear_lift(const LiftGenerators& gen, const Mat3& m) {
  return solve_linear_lift_cost(lift_adjoint(gen, m));
}

bool certify_unique(const LinearLiftSolution& sol, double tol) {
  return sol.spectral_gap > tol;
}

Vec4 project_simplex(const Vec4& v) {
  Vec4 sorted = v;
  std::sort(sorted.data(), sorted.data() + 4, std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (int k = 0; k < 4; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / (k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0);
}

LiftPoint project_spectrahedron(const Mat4& z) {
  const SymEigen4 eig = eigen_sym(0.5 * (z + z.transpose()));
  const Vec4 lam = project_simplex(eig.values);
  Mat4 out = eig.vectors * lam.asDiagonal() * eig.vectors.transpose();
  out = 0.5 * (out + out.transpose()).eval();
  return LiftPoint::unchecked(out);
}

void StepProblem::validate() const {
  if (!(weight > 0.0) || !std::isfinite(weight)) throw InvalidConfigError("step weight must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidConfigError("step size must be positive");
  if (!cost.allFinite() || (cost - cost.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw InvalidConfigError("step cost must be finite and symmetric");
  }
}

double step_objective(const StepProblem& p, const Mat4& z) {
  return inner(p.cost, z) - (p.weight / (2.0 * p.eps)) * (z - p.z_prev.matrix()).squaredNorm();
}

LiftPoint solve_regularized_step(const StepProblem& p) {
  p.validate();
  return project_spectrahedron(p.z_prev.matrix() + (p.eps / p.weight) * p.cost);
}

}  // namespace formation
