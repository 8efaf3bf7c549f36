#include "formation/psd_lift.hpp"

#include "formation/sym_eigen.hpp"

#include <cmath>
#include <sstream>

namespace formation {

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Kronecker product of a list of 2x2 factors, left to right.
Eigen::MatrixXd kron_chain(std::initializer_list<Eigen::MatrixXd> factors) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

}  // namespace

LiftGenerators build_generators() {
  LiftGenerators g;
  g.sigma0 << 1, 0, 0, 1;
  g.sigma1 << 1, 0, 0, -1;
  g.sigma2 << 0, -1, 1, 0;

  const Eigen::MatrixXd s0 = g.sigma0.cast<double>();
  const Eigen::MatrixXd s1 = g.sigma1.cast<double>();
  const Eigen::MatrixXd s2 = g.sigma2.cast<double>();
  const Eigen::MatrixXd plus = (Eigen::MatrixXd(2, 1) << 1, 1).finished();
  const Eigen::MatrixXd minus = (Eigen::MatrixXd(2, 1) << 1, -1).finished();

  Eigen::MatrixXd pe = 0.5 * kron_chain({plus, s0, s0}) + 0.5 * kron_chain({minus, s1, s1});
  for (Eigen::Index c = 0; c < pe.cols(); ++c) pe.col(c).normalize();
  g.Pe = pe;

  g.lambda[0] = kron_chain({s2, s0, s0});
  g.lambda[1] = kron_chain({s1, s2, s0});
  g.lambda[2] = kron_chain({s1, s1, s2});
  g.rho[0] = kron_chain({s2, s1, s1});
  g.rho[1] = kron_chain({s0, s2, s1});
  g.rho[2] = kron_chain({s0, s0, s2});

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g.A[i][j] = -g.Pe.transpose() * g.lambda[i] * g.rho[j] * g.Pe;
  return g;
}

const LiftGenerators& default_generators() {
  static const LiftGenerators gen = build_generators();
  return gen;
}

LiftPoint::LiftPoint(const Mat4& z) : z_(z) {
  const MembershipReport report = is_member(z);
  if (!report.member) throw NotLiftPointError("not a lift point: " + report.violation);
}

LiftPoint LiftPoint::from_vector(const Vec4& eta) {
  const double n2 = eta.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NotLiftPointError("lift vector must be nonzero and finite");
  }
  return unchecked(eta * eta.transpose() / n2);
}

Mat3 lift_project(const LiftGenerators& gen, const Mat4& z) {
  Mat3 x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = inner(gen.A[i][j], z);
  return x;
}

Mat4 lift_adjoint(const LiftGenerators& gen, const Mat3& y) {
  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out += y(i, j) * gen.A[i][j];
  return out;
}

MembershipReport is_member(const Mat4& z, const MembershipTolerances& tol) {
  MembershipReport r;
  if (!z.allFinite()) {
    r.violation = "non-finite entries";
    return r;
  }
  r.symmetry_residual = (z - z.transpose()).cwiseAbs().maxCoeff();
  r.min_eigenvalue = eigen_sym(0.5 * (z + z.transpose())).values[3];
  r.trace_error = std::abs(z.trace() - 1.0);

  std::ostringstream os;
  if (r.symmetry_residual > tol.symmetry) {
    os << "asymmetric (max |Z - Z^T| = " << r.symmetry_residual << ")";
  } else if (r.min_eigenvalue < -tol.min_eigenvalue) {
    os << "not PSD (min eigenvalue " << r.min_eigenvalue << ")";
  } else if (r.trace_error > tol.trace) {
    os << "trace " << z.trace() << " != 1";
  }
  r.violation = os.str();
  r.member = r.violation.empty();
  return r;
}

bool is_extreme(const LiftPoint& z, double rank_tol) {
  return eigen_sym(z.matrix()).values[1] <= rank_tol;
}

}  // namespace formation
