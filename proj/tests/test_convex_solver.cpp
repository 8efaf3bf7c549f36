#include "formation/convex_solver.hpp"

#include "formation/lie_so3.hpp"
#include "formation/sym_eigen.hpp"
#include "formation/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace formation {
namespace {

Mat4 reference_z1() {
  Mat4 z;
  z << 0.7011, 0.1899, -0.3764, 0.1783,
       0.1899, 0.0515, -0.1020, 0.0483,
       -0.3764, -0.1020, 0.2021, -0.0957,
       0.1783, 0.0483, -0.0957, 0.0453;
  return z;
}

Mat3 reference_r1() {
  Mat3 r;
  r << 0.4930, 0.6562, -0.5713,
       -0.8494, 0.5052, -0.1526,
       0.1885, 0.5605, 0.8064;
  return r;
}

// Simplex projection by bisection on the shift tau: sum max(v - tau, 0) = 1.
Vec4 bisection_simplex(const Vec4& v) {
  double lo = v.minCoeff() - 1.0;
  double hi = v.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((v.array() - mid).cwiseMax(0.0).sum() > 1.0 ? lo : hi) = mid;
  }
  return (v.array() - 0.5 * (lo + hi)).cwiseMax(0.0);
}

Mat4 rotate(const Mat4& d, Rng& rng) {
  const Mat4 q = eigen_sym(random_symmetric4(rng)).vectors;
  return q * d * q.transpose();
}

TEST(LinearLift, DiagonalCost) {
  const LinearLiftSolution sol = solve_linear_lift_cost(Vec4(2, 1, 1, 1).asDiagonal());
  EXPECT_EQ(sol.Z_star.matrix(), Mat4(Vec4(1, 0, 0, 0).asDiagonal()));
  EXPECT_EQ(sol.top_eigenvalue, 2.0);
  EXPECT_EQ(sol.spectral_gap, 1.0);
  EXPECT_TRUE(sol.unique);
}

TEST(LinearLift, DiagonalCostThroughProjection) {
  // The A_ij span the traceless symmetric matrices with <A_ij, A_kl> = 4 delta,
  // so A^dagger(A(D) / 4) = D for traceless D.
  const auto& gen = default_generators();
  const Mat4 d0 = Vec4(0.75, -0.25, -0.25, -0.25).asDiagonal();
  const Mat3 m = lift_project(gen, d0) / 4.0;
  EXPECT_LE((lift_adjoint(gen, m) - d0).cwiseAbs().maxCoeff(), 1e-15);
  const LinearLiftSolution sol = solve_linear_lift(gen, m);
  EXPECT_LE((sol.Z_star.matrix() - Mat4(Vec4(1, 0, 0, 0).asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((lift_project(gen, sol.Z_star) - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(sol.spectral_gap, 1.0, 1e-15);
}

TEST(LinearLift, BeatsRandomFeasiblePoints) {
  Rng rng(1);
  const Mat4 c = random_symmetric4(rng);
  const LinearLiftSolution sol = solve_linear_lift_cost(c);
  EXPECT_NEAR(inner(c, sol.Z_star.matrix()), sol.top_eigenvalue, 1e-13);
  double best = -1e300;
  for (int k = 0; k < 100000; ++k) {
    best = std::max(best, inner(c, random_lift_point(rng, 1 + k % 4)));
  }
  EXPECT_LE(best, sol.top_eigenvalue + 1e-12);
}

TEST(LinearLift, RecoversReferenceSolution) {
  const auto& gen = default_generators();
  const LinearLiftSolution sol = solve_linear_lift(gen, reference_r1());
  EXPECT_LE((sol.Z_star.matrix() - reference_z1()).cwiseAbs().maxCoeff(), 5e-4);
  // For a rotation R, A^dagger(R) has spectrum (3, -1, -1, -1).
  const SymEigen4 e = eigen_sym(lift_adjoint(gen, project_to_so3(reference_r1()).matrix()));
  EXPECT_LE((e.values - Vec4(3, -1, -1, -1)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LinearLift, LiftedOptimumIsBestRotation) {
  Rng rng(2);
  const auto& gen = default_generators();
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 m = random_mat3(rng);
    const LinearLiftSolution sol = solve_linear_lift(gen, m);
    const Mat3 r = lift_project(gen, sol.Z_star);
    EXPECT_TRUE(Rotation::is_rotation(r, 1e-9));
    EXPECT_NEAR(inner(m, r), sol.top_eigenvalue, 1e-12);
    for (int k = 0; k < 10000 / 20; ++k) {
      EXPECT_LE(inner(m, random_rotation(rng).matrix()), inner(m, r) + 1e-12);
    }
  }
}

TEST(LinearLift, SolutionIsRankOneUnitTracePsd) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const LinearLiftSolution sol = solve_linear_lift_cost(random_symmetric4(rng));
    EXPECT_TRUE(is_member(sol.Z_star.matrix()).member);
    EXPECT_TRUE(is_extreme(sol.Z_star, 1e-12));
    EXPECT_NEAR(sol.Z_star.matrix().trace(), 1.0, 1e-14);
    EXPECT_NEAR(sol.eta.norm(), 1.0, 1e-14);
  }
}

TEST(LinearLift, ArgmaxInvariantUnderPositiveScaling) {
  Rng rng(4);
  const auto& gen = default_generators();
  for (int k = 0; k < 50; ++k) {
    const Mat3 m = random_mat3(rng);
    const Mat4 z = solve_linear_lift(gen, m).Z_star.matrix();
    for (double s : {1e-3, 0.5, 7.0, 1e4}) {
      EXPECT_LE((solve_linear_lift(gen, Mat3(s * m)).Z_star.matrix() - z).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(CertifyUnique, DetectsTies) {
  const LinearLiftSolution flat = solve_linear_lift_cost(Mat4::Identity());
  EXPECT_FALSE(flat.unique);
  EXPECT_EQ(flat.spectral_gap, 0.0);

  EXPECT_TRUE(solve_linear_lift_cost(Vec4(1, 0.5, 0, 0).asDiagonal()).unique);

  Rng rng(5);
  const LinearLiftSolution tied = solve_linear_lift_cost(rotate(Vec4(2, 2, -1, 0.5).asDiagonal(), rng));
  EXPECT_FALSE(tied.unique);
  EXPECT_FALSE(certify_unique(tied, default_tie_tolerance(tied.top_eigenvalue)));

  const LinearLiftSolution split = solve_linear_lift_cost(Vec4(2, 2 - 1e-6, 0, 0).asDiagonal());
  EXPECT_TRUE(split.unique);
  EXPECT_FALSE(certify_unique(split, 1e-5));
}

TEST(ProjectSimplex, MatchesBisectionOracle) {
  Rng rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    const Vec4 v(u(rng), u(rng), u(rng), u(rng));
    const Vec4 p = project_simplex(v);
    EXPECT_LE((p - bisection_simplex(v)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(p.sum(), 1.0, 1e-14);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
  const Vec4 inside(0.1, 0.2, 0.3, 0.4);
  EXPECT_LE((project_simplex(inside) - inside).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_EQ(project_simplex(Vec4(5, 0, 0, 0)), Vec4(1, 0, 0, 0));
  EXPECT_EQ(project_simplex(Vec4::Zero()), Vec4::Constant(0.25));
}

TEST(ProjectSpectrahedron, Examples) {
  EXPECT_EQ(project_spectrahedron(Mat4::Zero()).matrix(), Mat4::Identity() / 4.0);
  const Mat4 d = Vec4(3, 0.5, -1, 0).asDiagonal();
  EXPECT_LE((project_spectrahedron(d).matrix() - Mat4(Vec4(1, 0, 0, 0).asDiagonal())).cwiseAbs().maxCoeff(),
            1e-15);

  Rng rng(7);
  for (int k = 0; k < 500; ++k) {
    const Mat4 z = 3.0 * random_symmetric4(rng);
    const SymEigen4 e = eigen_sym(z);
    const Mat4 expected = e.vectors * bisection_simplex(e.values).asDiagonal() * e.vectors.transpose();
    const Mat4 p = project_spectrahedron(z).matrix();
    EXPECT_LE((p - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(is_member(p).member);
  }
}

TEST(ProjectSpectrahedron, IdempotentAndNonExpansive) {
  Rng rng(8);
  for (int k = 0; k < 500; ++k) {
    const Mat4 z = random_lift_point(rng, 1 + k % 4);
    EXPECT_LE((project_spectrahedron(z).matrix() - z).cwiseAbs().maxCoeff(), 1e-13);

    const Mat4 a = 2.0 * random_symmetric4(rng);
    const Mat4 b = 2.0 * random_symmetric4(rng);
    const double before = (a - b).norm();
    const double after = (project_spectrahedron(a).matrix() - project_spectrahedron(b).matrix()).norm();
    EXPECT_LE(after, before + 1e-13);

    // Variational inequality: <a - P(a), y - P(a)> <= 0 for feasible y.
    const Mat4 pa = project_spectrahedron(a).matrix();
    EXPECT_LE(inner(Mat4(a - pa), Mat4(z - pa)), 1e-12);
  }
}

TEST(RegularizedStep, ZeroCostKeepsPreviousPoint) {
  Rng rng(9);
  StepProblem p;
  p.z_prev = LiftPoint::unchecked(random_lift_point(rng, 3));
  EXPECT_LE((solve_regularized_step(p).matrix() - p.z_prev.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(RegularizedStep, HeavyWeightBarelyMoves) {
  Rng rng(10);
  StepProblem p;
  p.cost = random_symmetric4(rng);
  p.z_prev = LiftPoint::from_vector(random_unit_vec4(rng));
  p.weight = 1e12;
  EXPECT_LE((solve_regularized_step(p).matrix() - p.z_prev.matrix()).norm(), 1e-12);
}

TEST(RegularizedStep, LightWeightReachesLinearOptimum) {
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    StepProblem p;
    p.cost = random_symmetric4(rng);
    p.z_prev = LiftPoint::unchecked(random_lift_point(rng, 2));
    p.eps = 1.0;
    p.weight = 1e-9;
    const LinearLiftSolution lin = solve_linear_lift_cost(p.cost);
    if (lin.spectral_gap < 1e-2) continue;
    EXPECT_LE((solve_regularized_step(p).matrix() - lin.Z_star.matrix()).norm(), 1e-4);
  }
}

TEST(RegularizedStep, MaximizesObjective) {
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    StepProblem p;
    p.cost = random_symmetric4(rng);
    p.z_prev = LiftPoint::from_vector(random_unit_vec4(rng));
    p.eps = 0.05;
    const Mat4 z = solve_regularized_step(p).matrix();
    EXPECT_TRUE(is_member(z).member);
    const double best = step_objective(p, z);
    EXPECT_GE(best, step_objective(p, p.z_prev.matrix()) - 1e-14);
    for (int t = 0; t < 200; ++t) {
      // Random feasible points, including some close to the optimum.
      const Mat4 y = t % 2 ? random_lift_point(rng, 1 + t % 4)
                           : project_spectrahedron(z + 0.01 * random_symmetric4(rng)).matrix();
      EXPECT_LE(step_objective(p, y), best + 1e-12);
    }
  }
}

TEST(RegularizedStep, ValidatesInput) {
  StepProblem p;
  p.weight = 0.0;
  EXPECT_THROW(solve_regularized_step(p), InvalidConfigError);
  p.weight = 1.0;
  p.eps = -1.0;
  EXPECT_THROW(solve_regularized_step(p), InvalidConfigError);
  p.eps = 0.1;
  p.cost(0, 1) = 1.0;
  EXPECT_THROW(solve_regularized_step(p), InvalidConfigError);
}

}  // namespace
}  // namespace formation
