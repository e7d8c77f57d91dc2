#pragma once

#include <functional>
#include <set>
#include <string>

#include "houseqa/scene.hpp"
#include "houseqa/trajectory.hpp"

namespace houseqa {

struct FovConfig {
    double fov_degrees = 90.0;  // full opening angle of the view frustum
    int max_view_distance = 12; // cells, Euclidean
};

// True when the target offset lies inside the frustum centered on the
// heading, boundary inclusive. The 90-degree default is evaluated with exact
// integer arithmetic; other angles fall back to floating point.
bool in_frustum(Heading heading, int dx, int dy, double fov_degrees = 90.0);

// Visits every grid cell touched by the segment between the two cell
// centers, corner touches included (supercover traversal). Visit order is
// from `from` towards `to`; returning false stops the walk.
void supercover_walk(Cell from, Cell to, const std::function<bool(Cell)>& visit);

// Line of sight between two cell centers: false when the supercover of the
// segment touches any wall cell. Only walls occlude; objects never do.
bool line_of_sight(const House& house, Cell from, Cell to);

// Objects visible from a pose: within max view distance, inside the frustum,
// and with clear line of sight. Deterministic, pure.
std::set<std::string> visible_objects(const House& house, const Pose& pose,
                                      const FovConfig& fov);

}  // namespace houseqa
