#pragma once

#include "formation/types.hpp"

namespace formation {

// Eigendecomposition of a 4x4 symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues are sorted in decreasing order; column k of `vectors` belongs
// to values[k] and is signed so that its largest-magnitude entry is positive.
struct SymEigen4 {
  Vec4 values;
  Mat4 vectors;
  int sweeps = 0;
  bool converged = false;
};

struct JacobiOptions {
  // Stop once the off-diagonal Frobenius norm drops below tol * ||A||_F.
  double tol = 1e-13;
  int max_sweeps = 64;
};

// Only the upper triangle of `a` is read.
SymEigen4 eigen_sym(const Mat4& a, const JacobiOptions& opts = {});

}  // namespace formation
