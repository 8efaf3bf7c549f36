#include "formation/lie_so3.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <sstream>

namespace formation {

namespace {

constexpr double kSmallAngle = 1e-8;
// Beyond this angle the antisymmetric part is too small to carry the axis
// reliably and the symmetric part is used instead.
constexpr double kNearPi = std::numbers::pi - 1e-3;

}  // namespace

Rotation::Rotation(const Mat3& m) : m_(m) {
  if (!m.allFinite()) throw NotRotationError("rotation has non-finite entries");
  const double orth = orthogonality_residual(m);
  const double det = m.determinant();
  if (orth > kTolerance || std::abs(det - 1.0) > kTolerance) {
    std::ostringstream os;
    os << "matrix is not a rotation: ||R^T R - I||_F = " << orth << ", det = " << det;
    throw NotRotationError(os.str());
  }
}

double Rotation::orthogonality_residual(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).norm();
}

bool Rotation::is_rotation(const Mat3& m, double tol) {
  return m.allFinite() && orthogonality_residual(m) <= tol &&
         std::abs(m.determinant() - 1.0) <= tol;
}

Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m, double tol) {
  const double residual = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "matrix is not skew-symmetric (||M + M^T||_max = " << residual << ")";
    throw NotSkewError(os.str());
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Rotation exp_so3(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 k = hat(w);
  double a;  // sin(t)/t
  double b;  // (1 - cos(t))/t^2
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return Rotation::unchecked(Mat3::Identity() + a * k + b * (k * k));
}

Rotation exp_so3(const Mat3& skew) { return exp_so3(vee(skew)); }

Mat3 exp_approx(const Mat3& skew, double alpha, int order) {
  if (order != 1 && order != 2) {
    throw FormationError("exp_approx order must be 1 or 2");
  }
  Mat3 out = Mat3::Identity() + alpha * skew;
  if (order == 2) out += 0.5 * alpha * alpha * (skew.transpose() * skew);
  return out;
}

Vec3 log_so3_vec(const Rotation& r) {
  const Mat3& m = r.matrix();
  const Vec3 anti(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  const double s = 0.5 * anti.norm();
  const double c = 0.5 * (m.trace() - 1.0);
  const double theta = std::atan2(s, c);

  if (theta < kSmallAngle) return 0.5 * anti;
  if (theta < kNearPi) return (theta / (2.0 * std::sin(theta))) * anti;

  // (R + R^T)/2 = cos(t) I + (1 - cos(t)) a a^T
  const Mat3 outer = (0.5 * (m + m.transpose()) - c * Mat3::Identity()) / (1.0 - c);
  Eigen::Index k = 0;
  outer.diagonal().maxCoeff(&k);
  Vec3 axis = outer.col(k) / std::sqrt(outer(k, k));
  axis.normalize();

  if (s > 1e-10) {
    if (axis.dot(anti) < 0.0) axis = -axis;
  } else {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axis[i]) > 1e-12) {
        if (axis[i] < 0.0) axis = -axis;
        break;
      }
    }
  }
  return theta * axis;
}

Mat3 log_so3(const Rotation& r) { return hat(log_so3_vec(r)); }

Rotation geodesic_step(const Rotation& r, const Vec3& w, double eps) {
  if (!(eps > 0.0)) throw FormationError("geodesic_step requires eps > 0");
  return r * exp_so3(Vec3(eps * w));
}

Rotation project_to_so3(const Mat3& m) {
  if (!m.allFinite()) throw DegenerateError("cannot project a non-finite matrix onto SO(3)");
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smallest = svd.singularValues()(2);
  if (smallest < 1e-12) {
    std::ostringstream os;
    os << "cannot project onto SO(3): smallest singular value " << smallest;
    throw DegenerateError(os.str());
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Vec3 d(1.0, 1.0, (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0);
  return Rotation::unchecked(u * d.asDiagonal() * v.transpose());
}

}  // namespace formation
