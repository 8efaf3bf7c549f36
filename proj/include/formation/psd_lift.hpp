#pragma once

#include "formation/types.hpp"

#include <array>
#include <string>

namespace formation {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat84 = Eigen::Matrix<double, 8, 4>;

/**
 * Fixed matrices of the spectrahedral representation of conv(SO(3)).
 *
 * conv(SO(3)) = { A(Z) : Z in S^4, Z >= 0, tr Z = 1 } where
 * A(Z)[i][j] = <A_ij, Z> and A_ij = -Pe^T lambda_i rho_j Pe.
 *
 * Index convention: the usual 1-based (i, j) in 1..3 is stored at
 * lambda[i-1], rho[j-1], A[i-1][j-1]. This is the only place the offset
 * is applied.
 */
struct LiftGenerators {
  Eigen::Matrix2i sigma0;  // identity
  Eigen::Matrix2i sigma1;  // diag(1, -1)
  Eigen::Matrix2i sigma2;  // [[0, -1], [1, 0]]
  Mat84 Pe;                // orthonormal columns
  std::array<Mat8, 3> lambda;
  std::array<Mat8, 3> rho;
  std::array<std::array<Mat4, 3>, 3> A;
};

// Builds the generators from their Kronecker-product definitions.
LiftGenerators build_generators();

// Process-wide immutable copy of build_generators().
const LiftGenerators& default_generators();

/// A 4x4 symmetric PSD unit-trace matrix: a point of the PSD lift.
class LiftPoint {
 public:
  static constexpr double kEigTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kSymmetryTolerance = 1e-9;

  LiftPoint() : z_(Mat4::Identity() / 4.0) {}
  // Throws NotLiftPointError if z violates the membership tolerances.
  explicit LiftPoint(const Mat4& z);

  static LiftPoint unchecked(const Mat4& z) {
    LiftPoint p;
    p.z_ = z;
    return p;
  }
  // eta eta^T / ||eta||^2
  static LiftPoint from_vector(const Vec4& eta);

  const Mat4& matrix() const { return z_; }

 private:
  Mat4 z_;
};

/// X = A(Z). Linear in Z; no membership requirement on the argument.
Mat3 lift_project(const LiftGenerators& gen, const Mat4& z);
inline Mat3 lift_project(const LiftGenerators& gen, const LiftPoint& z) {
  return lift_project(gen, z.matrix());
}

/// A^dagger(Y) = sum_ij A_ij Y_ij, the adjoint of lift_project under the
/// trace inner product.
Mat4 lift_adjoint(const LiftGenerators& gen, const Mat3& y);

struct MembershipTolerances {
  double symmetry = LiftPoint::kSymmetryTolerance;
  double min_eigenvalue = LiftPoint::kEigTolerance;
  double trace = LiftPoint::kTraceTolerance;
};

struct MembershipReport {
  bool member = false;
  double symmetry_residual = 0.0;  // max |Z - Z^T|
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;        // |tr Z - 1|
  std::string violation;           // empty when member
};

MembershipReport is_member(const Mat4& z, const MembershipTolerances& tol = {});

// Numerical rank one: second-largest eigenvalue at most rank_tol.
bool is_extreme(const LiftPoint& z, double rank_tol = 1e-6);

// Frobenius inner product <X, Y> = tr(X^T Y).
template <typename A, typename B>
double inner(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  return x.cwiseProduct(y).sum();
}

}  // namespace formation
