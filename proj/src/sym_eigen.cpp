#include "formation/sym_eigen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace formation {

namespace {

double off_diagonal_norm(const Mat4& a) {
  double sum = 0.0;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) sum += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(sum);
}

}  // namespace

SymEigen4 eigen_sym(const Mat4& input, const JacobiOptions& opts) {
  Mat4 a = input.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();

  Mat4 v = Mat4::Identity();
  const double scale = a.norm();
  const double threshold = opts.tol * scale;

  SymEigen4 out;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      out.converged = true;
      break;
    }
    ++out.sweeps;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p, q).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int r = 0; r < 4; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
            a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (!out.converged) out.converged = off_diagonal_norm(a) <= threshold;

  std::array<int, 4> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x) > a(y, y); });
  for (int k = 0; k < 4; ++k) {
    out.values[k] = a(order[k], order[k]);
    Vec4 col = v.col(order[k]);
    Eigen::Index big = 0;
    col.cwiseAbs().maxCoeff(&big);
    if (col[big] < 0.0) col = -col;
    out.vectors.col(k) = col;
  }
  return out;
}

}  // namespace formation
