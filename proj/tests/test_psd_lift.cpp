#include "formation/psd_lift.hpp"

#include "formation/lie_so3.hpp"
#include "formation/sym_eigen.hpp"
#include "formation/verify.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <vector>

namespace formation {
namespace {

// Dense row-major matrices and a loop-based Kronecker product, kept apart
// from the library's Eigen implementation.
using Grid = std::vector<std::vector<double>>;

Grid kron(const Grid& a, const Grid& b) {
  const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Grid out(ar * br, std::vector<double>(ac * bc, 0.0));
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return out;
}

Grid matmul(const Grid& a, const Grid& b) {
  Grid out(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Grid transpose(const Grid& a) {
  Grid out(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

Grid add_scaled(const Grid& a, const Grid& b, double sa, double sb) {
  Grid out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[i][j] = sa * a[i][j] + sb * b[i][j];
  return out;
}

const Grid S0 = {{1, 0}, {0, 1}};
const Grid S1 = {{1, 0}, {0, -1}};
const Grid S2 = {{0, -1}, {1, 0}};

Grid oracle_pe() {
  const Grid plus = {{1}, {1}};
  const Grid minus = {{1}, {-1}};
  return add_scaled(kron(kron(plus, S0), S0), kron(kron(minus, S1), S1), 0.5, 0.5);
}

Grid oracle_a(int i, int j) {
  const Grid lambda[3] = {kron(kron(S2, S0), S0), kron(kron(S1, S2), S0), kron(kron(S1, S1), S2)};
  const Grid rho[3] = {kron(kron(S2, S1), S1), kron(kron(S0, S2), S1), kron(kron(S0, S0), S2)};
  const Grid pe = oracle_pe();
  Grid a = matmul(matmul(matmul(transpose(pe), lambda[i]), rho[j]), pe);
  for (auto& row : a)
    for (auto& x : row) x = -x;
  return a;
}

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

TEST(Generators, Dimensions) {
  const LiftGenerators g = build_generators();
  EXPECT_EQ(g.Pe.rows(), 8);
  EXPECT_EQ(g.Pe.cols(), 4);
  for (const auto& row : g.A)
    for (const auto& a : row) {
      EXPECT_EQ(a.rows(), 4);
      EXPECT_EQ(a.cols(), 4);
    }
  EXPECT_EQ(kron(S0, S0), (Grid{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST(Generators, PeHasOrthonormalColumns) {
  const LiftGenerators g = build_generators();
  EXPECT_LE((g.Pe.transpose() * g.Pe - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  const Grid pe = oracle_pe();
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(g.Pe(r, c), pe[r][c]);
}

TEST(Generators, MatchKroneckerOracle) {
  const LiftGenerators g = build_generators();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Grid expected = oracle_a(i, j);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) EXPECT_EQ(g.A[i][j](r, c), expected[r][c]) << i << j << r << c;
      EXPECT_EQ(g.A[i][j], g.A[i][j].transpose());
    }
  }
  Mat4 a11;
  a11 << 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1;
  EXPECT_EQ(g.A[0][0], a11);
}

TEST(Generators, OrthogonalBasisOfTracelessMatrices) {
  const LiftGenerators g = build_generators();
  for (int a = 0; a < 9; ++a) {
    EXPECT_EQ(g.A[a / 3][a % 3].trace(), 0.0);
    for (int b = 0; b < 9; ++b) {
      EXPECT_EQ(inner(g.A[a / 3][a % 3], g.A[b / 3][b % 3]), a == b ? 4.0 : 0.0);
    }
  }
}

TEST(Generators, Deterministic) {
  const LiftGenerators a = build_generators();
  const LiftGenerators b = build_generators();
  EXPECT_EQ(a.Pe, b.Pe);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.lambda[i], b.lambda[i]);
    EXPECT_EQ(a.rho[i], b.rho[i]);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a.A[i][j], b.A[i][j]);
  }
  EXPECT_EQ(default_generators().A[2][1], a.A[2][1]);
}

TEST(LiftProject, ReferenceMatrices) {
  const Mat3 x = lift_project(default_generators(), reference_z1());
  EXPECT_LE((x - reference_r1()).cwiseAbs().maxCoeff(), 5e-3);
}

TEST(LiftProject, ZeroMapsToZero) {
  EXPECT_EQ(lift_project(default_generators(), Mat4::Zero()), Mat3::Zero());
}

TEST(LiftProject, RankOnePointsMapToRotations) {
  Rng rng(1);
  for (int k = 0; k < 2000; ++k) {
    const Vec4 eta = random_unit_vec4(rng);
    const Mat3 x = lift_project(default_generators(), LiftPoint::from_vector(eta));
    EXPECT_LE(Rotation::orthogonality_residual(x), 1e-9);
    EXPECT_NEAR(x.determinant(), 1.0, 1e-9);
  }
}

TEST(LiftProject, Linear) {
  Rng rng(2);
  const auto& gen = default_generators();
  for (int k = 0; k < 100; ++k) {
    const Mat4 z1 = random_symmetric4(rng);
    const Mat4 z2 = random_symmetric4(rng);
    const double a = 1.7, b = -0.3;
    EXPECT_LE((lift_project(gen, Mat4(a * z1 + b * z2)) - a * lift_project(gen, z1) - b * lift_project(gen, z2))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-14);
  }
}

TEST(LiftProject, ContractsIntoUnitBall) {
  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const Mat4 z = random_lift_point(rng, 1 + k % 4);
    const Mat3 x = lift_project(default_generators(), z);
    Eigen::JacobiSVD<Mat3> svd(x);
    EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-9);
  }
}

TEST(LiftProject, DoubleCover) {
  // eta and -eta give the same rotation, and the lift of that rotation
  // recovers eta up to sign.
  Rng rng(4);
  const auto& gen = default_generators();
  for (int k = 0; k < 200; ++k) {
    const Vec4 eta = random_unit_vec4(rng);
    const Mat3 r = lift_project(gen, LiftPoint::from_vector(eta));
    EXPECT_EQ(r, lift_project(gen, LiftPoint::from_vector(-eta)));
    const SymEigen4 e = eigen_sym(lift_adjoint(gen, r));
    EXPECT_NEAR(e.values[0], 3.0, 1e-12);
    EXPECT_NEAR(std::abs(e.vectors.col(0).dot(eta)), 1.0, 1e-12);
  }
}

TEST(LiftAdjoint, ZeroMapsToZero) {
  EXPECT_EQ(lift_adjoint(default_generators(), Mat3::Zero()), Mat4::Zero());
}

TEST(LiftAdjoint, AdjointIdentity) {
  Rng rng(5);
  const auto& gen = default_generators();
  for (int k = 0; k < 1000; ++k) {
    const Mat4 z = random_symmetric4(rng);
    const Mat3 y = random_mat3(rng);
    // Two-sided evaluation straight from the definitions.
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        lhs += (gen.A[i][j].transpose() * z).trace() * y(i, j);
        rhs += (z.transpose() * (gen.A[i][j] * y(i, j))).trace();
      }
    EXPECT_NEAR(inner(lift_project(gen, z), y), lhs, 1e-12);
    EXPECT_NEAR(inner(z, lift_adjoint(gen, y)), rhs, 1e-12);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(LiftAdjoint, RankOneInputIsSymmetric) {
  const Vec3 p = Vec3(1, -2, 0.5).normalized();
  const Vec3 b = Vec3(0.3, 0.3, -1).normalized();
  const Mat4 c = lift_adjoint(default_generators(), p * b.transpose());
  EXPECT_EQ(c, c.transpose());
}

TEST(IsMember, Examples) {
  EXPECT_TRUE(is_member(Mat4::Identity() / 4.0).member);

  const MembershipReport bad = is_member(Vec4(1, 1, 0, 0).asDiagonal().toDenseMatrix());
  EXPECT_FALSE(bad.member);
  EXPECT_NEAR(bad.trace_error, 1.0, 1e-15);
  EXPECT_NE(bad.violation.find("trace"), std::string::npos);

  Mat4 asym = Mat4::Identity() / 4.0;
  asym(0, 1) = 0.1;
  EXPECT_FALSE(is_member(asym).member);

  const MembershipReport neg = is_member(Vec4(1.5, -0.5, 0, 0).asDiagonal().toDenseMatrix());
  EXPECT_FALSE(neg.member);
  EXPECT_NEAR(neg.min_eigenvalue, -0.5, 1e-15);
}

TEST(IsMember, ReferenceMatrixWithinRoundingTolerance) {
  // Printed to 4 decimals: trace is 1.0000 but the smallest eigenvalue
  // is about -5e-5, so membership holds at rounding tolerance only.
  const Mat4 z = reference_z1();
  EXPECT_NEAR(z.trace(), 1.0, 1e-12);
  MembershipTolerances rounding;
  rounding.min_eigenvalue = 1e-4;
  rounding.trace = 1e-4;
  EXPECT_TRUE(is_member(z, rounding).member);
  EXPECT_FALSE(is_member(z).member);
}

TEST(IsExtreme, Examples) {
  Rng rng(6);
  EXPECT_TRUE(is_extreme(LiftPoint::from_vector(random_unit_vec4(rng))));
  EXPECT_FALSE(is_extreme(LiftPoint(Mat4::Identity() / 4.0)));
  const LiftPoint z1 = LiftPoint::unchecked(reference_z1());
  EXPECT_TRUE(is_extreme(z1, 1e-3));
  EXPECT_LT(eigen_sym(reference_z1()).values[1], 1e-3);
}

TEST(LiftPoint, ValidatesOnConstruction) {
  EXPECT_THROW(LiftPoint(Mat4::Identity()), NotLiftPointError);
  EXPECT_THROW(LiftPoint::from_vector(Vec4::Zero()), NotLiftPointError);
  EXPECT_NO_THROW(LiftPoint(Mat4::Identity() / 4.0));
}

}  // namespace
}  // namespace formation
