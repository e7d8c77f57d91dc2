#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <vector>

#include "houseqa/lexicon.hpp"
#include "houseqa/synth.hpp"

namespace houseqa::testing {

std::optional<int> ucs_distance(const House& house, Cell start, Cell goal) {
    if (!house.walkable(start) || !house.walkable(goal)) return std::nullopt;
    const int n = house.width * house.height;
    std::vector<int> dist(static_cast<std::size_t>(n), std::numeric_limits<int>::max());
    auto index = [&](Cell c) { return static_cast<std::size_t>(c.y) * house.width + c.x; };

    using Entry = std::pair<int, int>;  // (distance, cell index)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[index(start)] = 0;
    queue.push({0, static_cast<int>(index(start))});
    while (!queue.empty()) {
        auto [d, at] = queue.top();
        queue.pop();
        if (d > dist[static_cast<std::size_t>(at)]) continue;
        Cell c{at % house.width, at / house.width};
        if (c == goal) return d;
        const Cell neighbors[4] = {{c.x - 1, c.y}, {c.x + 1, c.y}, {c.x, c.y - 1},
                                   {c.x, c.y + 1}};
        for (Cell nb : neighbors) {
            if (!house.walkable(nb)) continue;
            if (d + 1 < dist[index(nb)]) {
                dist[index(nb)] = d + 1;
                queue.push({d + 1, static_cast<int>(index(nb))});
            }
        }
    }
    return std::nullopt;
}

bool segment_touches_cell(Cell from, Cell to, Cell target) {
    // Everything doubled so cell centers and square corners are integral.
    const std::int64_t px0 = 2 * from.x + 1, py0 = 2 * from.y + 1;
    const std::int64_t px1 = 2 * to.x + 1, py1 = 2 * to.y + 1;
    const std::int64_t bx0 = 2 * target.x, by0 = 2 * target.y;
    const std::int64_t bx1 = bx0 + 2, by1 = by0 + 2;

    if (std::max(px0, px1) < bx0 || std::min(px0, px1) > bx1) return false;
    if (std::max(py0, py1) < by0 || std::min(py0, py1) > by1) return false;

    // Remaining separating axis: the segment's normal. The square misses the
    // segment's carrier line only when all four corners are strictly on one
    // side.
    const std::int64_t dx = px1 - px0, dy = py1 - py0;
    auto side = [&](std::int64_t cx, std::int64_t cy) {
        return (cx - px0) * dy - (cy - py0) * dx;
    };
    const std::int64_t s1 = side(bx0, by0);
    const std::int64_t s2 = side(bx1, by0);
    const std::int64_t s3 = side(bx0, by1);
    const std::int64_t s4 = side(bx1, by1);
    const bool all_positive = s1 > 0 && s2 > 0 && s3 > 0 && s4 > 0;
    const bool all_negative = s1 < 0 && s2 < 0 && s3 < 0 && s4 < 0;
    return !(all_positive || all_negative);
}

bool los_oracle(const House& house, Cell from, Cell to) {
    const int x0 = std::min(from.x, to.x), x1 = std::max(from.x, to.x);
    const int y0 = std::min(from.y, to.y), y1 = std::max(from.y, to.y);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            Cell c{x, y};
            if (house.wall(c) && segment_touches_cell(from, to, c)) return false;
        }
    }
    return true;
}

std::set<std::string> visible_objects_oracle(const House& house, const Pose& pose,
                                             const FovConfig& fov) {
    int fx = 0, fy = 0;
    switch (pose.heading) {
        case Heading::North: fx = 0; fy = -1; break;
        case Heading::East: fx = 1; fy = 0; break;
        case Heading::South: fx = 0; fy = 1; break;
        case Heading::West: fx = -1; fy = 0; break;
    }
    const std::int64_t r2 =
        static_cast<std::int64_t>(fov.max_view_distance) * fov.max_view_distance;
    std::set<std::string> out;
    for (const ObjectInstance& obj : house.objects) {
        const std::int64_t dx = obj.cell.x - pose.cell.x;
        const std::int64_t dy = obj.cell.y - pose.cell.y;
        const std::int64_t d2 = dx * dx + dy * dy;
        if (d2 > r2) continue;
        const std::int64_t fwd = fx * dx + fy * dy;
        if (fwd < 0 || 2 * fwd * fwd < d2) continue;
        if (!los_oracle(house, pose.cell, obj.cell)) continue;
        out.insert(obj.id);
    }
    return out;
}

House random_test_house(std::uint64_t seed, int width, int height) {
    SynthConfig cfg;
    cfg.grid_width = width;
    cfg.grid_height = height;
    cfg.min_rooms = 2;
    cfg.max_rooms = 4;
    cfg.min_objects_per_room = 1;
    cfg.max_objects_per_room = 5;
    return synth_house(cfg, default_lexicon(), seed, "test-house");
}

House two_room_house() {
    House h;
    h.id = "fixture";
    h.width = 9;
    h.height = 5;
    h.cells.assign(static_cast<std::size_t>(h.width) * h.height, CellKind::Wall);
    h.rooms.push_back({"room-a", "bedroom", {1, 1, 3, 3}});
    h.rooms.push_back({"room-b", "kitchen", {5, 1, 3, 3}});
    for (const Room& r : h.rooms) {
        for (int y = r.bbox.y; y < r.bbox.y + r.bbox.h; ++y) {
            for (int x = r.bbox.x; x < r.bbox.x + r.bbox.w; ++x) {
                h.set_cell({x, y}, CellKind::RoomFloor);
            }
        }
    }
    h.doorways.push_back({"room-a", "room-b", {4, 2}});
    h.set_cell({4, 2}, CellKind::Doorway);
    return h;
}

ObjectInstance make_object(const std::string& id, const std::string& obj_type,
                           const std::string& color, const std::set<std::string>& extras,
                           Cell cell, const std::string& room_id, double size) {
    ObjectInstance obj;
    obj.id = id;
    obj.obj_type = obj_type;
    obj.color = color;
    obj.extra_attrs = extras;
    obj.cell = cell;
    obj.size = size;
    obj.room_id = room_id;
    return obj;
}

TrajectoryGroundTruth gt_seeing_everything(const House& house) {
    TrajectoryGroundTruth gt;
    gt.house_id = house.id;
    gt.video_id = house.id + "-v000";
    for (const ObjectInstance& o : house.objects) gt.seen_objects.insert(o.id);
    for (const Room& r : house.rooms) gt.seen_rooms.insert(r.id);
    return gt;
}

}  // namespace houseqa::testing
