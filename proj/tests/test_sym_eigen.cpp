#include "formation/sym_eigen.hpp"
#include "formation/verify.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

namespace formation {
namespace {

TEST(EigenSym, DiagonalInput) {
  const Mat4 a = Vec4(1.0, 3.0, -2.0, 0.5).asDiagonal();
  const SymEigen4 e = eigen_sym(a);
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.values, Vec4(3.0, 1.0, 0.5, -2.0));
  EXPECT_EQ(e.vectors.col(0), Vec4::UnitY());
  EXPECT_EQ(e.vectors.col(3), Vec4::UnitZ());
}

TEST(EigenSym, AgreesWithReferenceSolver) {
  Rng rng(17);
  for (int k = 0; k < 500; ++k) {
    const Mat4 a = random_symmetric4(rng);
    const SymEigen4 e = eigen_sym(a);
    ASSERT_TRUE(e.converged);
    EXPECT_LE(e.sweeps, 64);

    Eigen::SelfAdjointEigenSolver<Mat4> ref(a);
    const Vec4 ref_desc = ref.eigenvalues().reverse();
    EXPECT_LE((e.values - ref_desc).cwiseAbs().maxCoeff(), 1e-13);

    EXPECT_LE((e.vectors.transpose() * e.vectors - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    // Jacobi stops once off-diagonal mass is below 1e-13 ||A||_F.
    EXPECT_LE((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - a).cwiseAbs().maxCoeff(),
              1e-12 * a.norm());
    for (int c = 0; c < 4; ++c) {
      Eigen::Index big = 0;
      e.vectors.col(c).cwiseAbs().maxCoeff(&big);
      EXPECT_GT(e.vectors(big, c), 0.0);
    }
  }
}

TEST(EigenSym, RepeatedEigenvalues) {
  const SymEigen4 e = eigen_sym(Mat4::Identity());
  EXPECT_EQ(e.values, Vec4::Ones());
  EXPECT_EQ(e.vectors, Mat4::Identity());

  Rng rng(3);
  const Mat4 q = eigen_sym(random_symmetric4(rng)).vectors;
  const Mat4 a = q * Vec4(2.0, 2.0, -1.0, 0.0).asDiagonal() * q.transpose();
  const SymEigen4 r = eigen_sym(a);
  EXPECT_NEAR(r.values[0], 2.0, 1e-14);
  EXPECT_NEAR(r.values[1], 2.0, 1e-14);
  EXPECT_NEAR(r.values[3], -1.0, 1e-14);
}

TEST(EigenSym, ZeroMatrix) {
  const SymEigen4 e = eigen_sym(Mat4::Zero());
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.values, Vec4::Zero());
}

TEST(EigenSym, Deterministic) {
  Rng rng(8);
  const Mat4 a = random_symmetric4(rng);
  const SymEigen4 x = eigen_sym(a);
  const SymEigen4 y = eigen_sym(a);
  EXPECT_EQ(x.values, y.values);
  EXPECT_EQ(x.vectors, y.vectors);
}

}  // namespace
}  // namespace formation
