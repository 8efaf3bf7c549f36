#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formation {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Base of every error raised by the library. Each subclass maps to one
// failure mode named in the module contracts.
class FormationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSkewError : public FormationError {
 public:
  using FormationError::FormationError;
};

class NotRotationError : public FormationError {
 public:
  using FormationError::FormationError;
};

class DegenerateError : public FormationError {
 public:
  using FormationError::FormationError;
};

class NotLiftPointError : public FormationError {
 public:
  using FormationError::FormationError;
};

class NotSPDError : public FormationError {
 public:
  using FormationError::FormationError;
};

class InvalidGraphError : public FormationError {
 public:
  using FormationError::FormationError;
};

class InvalidConfigError : public FormationError {
 public:
  using FormationError::FormationError;
};

class CoincidentAgentsError : public FormationError {
 public:
  CoincidentAgentsError(std::size_t edge, int i, int j, double distance);

  // Index into the graph's edge list; npos when raised by a bare bearing().
  std::size_t edge() const { return edge_; }
  int agent_i() const { return i_; }
  int agent_j() const { return j_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t edge_;
  int i_;
  int j_;
};

class DivergedError : public FormationError {
 public:
  DivergedError(long step, double potential, double initial_potential);

  long step() const { return step_; }
  double potential() const { return potential_; }

 private:
  long step_;
  double potential_;
};

}  // namespace formation
