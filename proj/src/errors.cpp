#include "formation/types.hpp"

#include <sstream>

namespace formation {

namespace {

std::string coincident_message(std::size_t edge, int i, int j, double distance) {
  std::ostringstream os;
  os << "coincident agents";
  if (i >= 0) os << " " << i + 1 << " and " << j + 1;
  if (edge != CoincidentAgentsError::npos) os << " on edge " << edge + 1;
  os << " (distance " << distance << ")";
  return os.str();
}

std::string diverged_message(long step, double potential, double initial) {
  std::ostringstream os;
  os << "simulation diverged at step " << step << ": potential " << potential
     << " exceeds 1e6 x initial " << initial;
  return os.str();
}

}  // namespace

CoincidentAgentsError::CoincidentAgentsError(std::size_t edge, int i, int j,
                                             double distance)
    : FormationError(coincident_message(edge, i, j, distance)),
      edge_(edge),
      i_(i),
      j_(j) {}

DivergedError::DivergedError(long step, double potential, double initial_potential)
    : FormationError(diverged_message(step, potential, initial_potential)),
      step_(step),
      potential_(potential) {}

}  // namespace formation
