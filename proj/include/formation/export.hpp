#pragma once

#include "formation/formation_sim.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace formation {

// Header of trajectory.csv.
extern const char* const kTrajectoryCsvHeader;

// One row per agent per recorded step, numbers printed with 17 significant
// digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_potential_csv(std::ostream& out, const Trajectory& traj);
// step, agent, |v|, |w|, sqrt(|v|^2 + |w|^2)
void write_controls_csv(std::ostream& out, const Trajectory& traj);

// Rebuilds states, controls (v, w) and potentials from trajectory.csv.
// Lifted diagnostics and energies are not part of the file and stay empty.
// Throws FormationError on malformed input.
Trajectory read_trajectory_csv(std::istream& in);

/**
 * Formation plot: initial positions gray, desired shape red, final
 * positions blue, edges drawn for each set. 3-D points are mapped with the
 * isometric projection
 *   u = (x - y) cos 30deg,   v = (x + y) sin 30deg - z
 * then fitted to the canvas. `desired` may be empty; when present it is
 * translated and scaled to the centroid and RMS radius of `final`.
 */
void write_formation_svg(std::ostream& out, const FormationGraph& graph,
                         const std::vector<Vec3>& initial, const std::vector<Vec3>& desired,
                         const std::vector<Vec3>& final);

// Potential versus step, logarithmic y axis.
void write_potential_svg(std::ostream& out, const std::vector<double>& potentials);

std::vector<Vec3> positions_of(const NetworkState& s);

}  // namespace formation
