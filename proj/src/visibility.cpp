#include "houseqa/visibility.hpp"

#include <cmath>
#include <cstdlib>

namespace houseqa {

bool in_frustum(Heading heading, int dx, int dy, double fov_degrees) {
    // Forward and lateral components in the heading frame.
    std::int64_t fwd = 0, lat = 0;
    switch (heading) {
        case Heading::North: fwd = -dy; lat = dx; break;
        case Heading::East: fwd = dx; lat = dy; break;
        case Heading::South: fwd = dy; lat = -dx; break;
        case Heading::West: fwd = -dx; lat = -dy; break;
    }
    if (fov_degrees == 90.0) return fwd >= std::llabs(lat);
    if (fwd < 0) return false;
    const double half = fov_degrees * 0.5 * (3.14159265358979323846 / 180.0);
    const double c = std::cos(half);
    const double d2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
    return static_cast<double>(fwd) * fwd >= c * c * d2;
}

void supercover_walk(Cell from, Cell to, const std::function<bool(Cell)>& visit) {
    // Integer supercover traversal (Dedu). At an exact corner crossing both
    // side cells are visited, so cells touched only at a point still count.
    int x = from.x, y = from.y;
    int dx = to.x - from.x, dy = to.y - from.y;
    int xstep = 1, ystep = 1;
    if (dx < 0) { xstep = -1; dx = -dx; }
    if (dy < 0) { ystep = -1; dy = -dy; }
    if (!visit({x, y})) return;
    const int ddx = 2 * dx, ddy = 2 * dy;
    if (ddx >= ddy) {
        int error = dx, errorprev = dx;
        for (int i = 0; i < dx; ++i) {
            x += xstep;
            error += ddy;
            if (error > ddx) {
                y += ystep;
                error -= ddx;
                if (error + errorprev < ddx) {
                    if (!visit({x, y - ystep})) return;
                } else if (error + errorprev > ddx) {
                    if (!visit({x - xstep, y})) return;
                } else {
                    if (!visit({x, y - ystep})) return;
                    if (!visit({x - xstep, y})) return;
                }
            }
            if (!visit({x, y})) return;
            errorprev = error;
        }
    } else {
        int error = dy, errorprev = dy;
        for (int i = 0; i < dy; ++i) {
            y += ystep;
            error += ddx;
            if (error > ddy) {
                x += xstep;
                error -= ddy;
                if (error + errorprev < ddy) {
                    if (!visit({x - xstep, y})) return;
                } else if (error + errorprev > ddy) {
                    if (!visit({x, y - ystep})) return;
                } else {
                    if (!visit({x - xstep, y})) return;
                    if (!visit({x, y - ystep})) return;
                }
            }
            if (!visit({x, y})) return;
            errorprev = error;
        }
    }
}

bool line_of_sight(const House& house, Cell from, Cell to) {
    bool clear = true;
    supercover_walk(from, to, [&](Cell c) {
        if (house.wall(c)) {
            clear = false;
            return false;
        }
        return true;
    });
    return clear;
}

std::set<std::string> visible_objects(const House& house, const Pose& pose,
                                      const FovConfig& fov) {
    std::set<std::string> out;
    const std::int64_t r2 =
        static_cast<std::int64_t>(fov.max_view_distance) * fov.max_view_distance;
    for (const ObjectInstance& o : house.objects) {
        int dx = o.cell.x - pose.cell.x;
        int dy = o.cell.y - pose.cell.y;
        if (static_cast<std::int64_t>(dx) * dx + static_cast<std::int64_t>(dy) * dy > r2)
            continue;
        if (!in_frustum(pose.heading, dx, dy, fov.fov_degrees)) continue;
        if (!line_of_sight(house, pose.cell, o.cell)) continue;
        out.insert(o.id);
    }
    return out;
}

}  // namespace houseqa
