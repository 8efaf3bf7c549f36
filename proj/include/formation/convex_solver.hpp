#pragma once

#include "formation/psd_lift.hpp"
#include "formation/types.hpp"

namespace formation {

// Maximizer of <C, Z> over the spectrahedron {Z >= 0, tr Z = 1}.
struct LinearLiftSolution {
  LiftPoint Z_star;            // eta eta^T
  Vec4 eta = Vec4::UnitX();    // unit top eigenvector of C
  double top_eigenvalue = 0.0; // optimal value <C, Z*>
  double spectral_gap = 0.0;   // lambda_1 - lambda_2
  bool unique = false;         // certify_unique at the default tolerance
};

// Default tie tolerance for certify_unique: 1e-8 * (1 + |lambda_1|).
double default_tie_tolerance(double top_eigenvalue);

/**
 * Maximize <M, X> over X in conv(SO(3)) through the lift: C = A^dagger(M),
 * Z* = eta eta^T for the top eigenvector eta of C. A(Z*) is a rotation and
 * attains max <M, R> over SO(3).
 */
LinearLiftSolution solve_linear_lift(const LiftGenerators& gen, const Mat3& m);

// Same, starting from the lifted cost. Only the upper triangle is read.
LinearLiftSolution solve_linear_lift_cost(const Mat4& cost);

// True iff the top eigenvalue is simple: spectral_gap > tol.
bool certify_unique(const LinearLiftSolution& sol, double tol);

// Euclidean projection of v onto {x >= 0, sum x = 1}.
Vec4 project_simplex(const Vec4& v);

// Frobenius-nearest point of the spectrahedron: eigenvalues of Z are
// projected onto the probability simplex, eigenvectors kept.
LiftPoint project_spectrahedron(const Mat4& z);

/// One energy-penalized lifted attitude update.
struct StepProblem {
  Mat4 cost = Mat4::Zero();  // A^dagger of the bearing term
  LiftPoint z_prev;
  double weight = 1.0;       // scalar energy weight, > 0
  double eps = 0.01;         // step size, > 0

  // Throws InvalidConfigError when an invariant fails.
  void validate() const;
};

// <C, Z> - (w / 2 eps) ||Z - Z_prev||_F^2
double step_objective(const StepProblem& p, const Mat4& z);

// argmax of step_objective over the spectrahedron:
// project_spectrahedron(Z_prev + (eps / w) C).
LiftPoint solve_regularized_step(const StepProblem& p);

}  // namespace formation
