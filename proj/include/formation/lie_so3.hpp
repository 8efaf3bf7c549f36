#pragma once

#include "formation/types.hpp"

namespace formation {

/**
 * An element of SO(3). The constructor validates orthogonality and
 * determinant; use Rotation::unchecked() only for matrices that are known
 * to be rotations by construction (e.g. the output of exp_so3).
 */
class Rotation {
 public:
  static constexpr double kTolerance = 1e-9;

  Rotation() : m_(Mat3::Identity()) {}
  explicit Rotation(const Mat3& m);

  static Rotation identity() { return Rotation(); }
  static Rotation unchecked(const Mat3& m) {
    Rotation r;
    r.m_ = m;
    return r;
  }

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return unchecked(m_.transpose()); }

  // ||R^T R - I||_F
  static double orthogonality_residual(const Mat3& m);
  static bool is_rotation(const Mat3& m, double tol = kTolerance);

  friend Rotation operator*(const Rotation& a, const Rotation& b) {
    return unchecked(a.m_ * b.m_);
  }
  friend Vec3 operator*(const Rotation& a, const Vec3& v) { return a.m_ * v; }
  bool operator==(const Rotation& other) const { return m_ == other.m_; }

 private:
  Mat3 m_;
};

// so(3) element stored as its full 3x3 matrix. Produced by hat(); vee()
// checks skew-symmetry before reading the three independent entries.
using SkewMatrix = Mat3;

Mat3 hat(const Vec3& w);

// Throws NotSkewError if ||M + M^T||_max exceeds tol.
Vec3 vee(const Mat3& m, double tol = 1e-9);

// Rodrigues formula; angles below 1e-8 use the second-order Taylor
// coefficients.
Rotation exp_so3(const Mat3& skew);
Rotation exp_so3(const Vec3& w);

// Truncated exponential. order 1: I + aM. order 2: I + aM + (a^2/2) M^T M,
// the second-order term taken with M^T M as written in the discretization
// this library follows, not the Taylor M^2 (they differ in sign for skew M).
Mat3 exp_approx(const Mat3& skew, double alpha, int order);

// Principal logarithm, rotation angle in [0, pi]. At angle pi the axis is
// read off the dominant diagonal entry of (R + I)/2 and signed so that its
// first nonzero component is positive.
Mat3 log_so3(const Rotation& r);
Vec3 log_so3_vec(const Rotation& r);

// R exp(eps * hat(w)); stays on SO(3) without re-projection.
Rotation geodesic_step(const Rotation& r, const Vec3& w, double eps);

// Nearest rotation in Frobenius norm: U diag(1, 1, det(U V^T)) V^T.
// Throws DegenerateError when the smallest singular value is below 1e-12.
Rotation project_to_so3(const Mat3& m);

}  // namespace formation
