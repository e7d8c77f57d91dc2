#include "houseqa/trajectory.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <stdexcept>

namespace houseqa {

char heading_char(Heading h) {
    switch (h) {
        case Heading::North: return 'N';
        case Heading::East: return 'E';
        case Heading::South: return 'S';
        case Heading::West: return 'W';
    }
    return '?';
}

std::optional<Heading> heading_from_char(char c) {
    switch (c) {
        case 'N': return Heading::North;
        case 'E': return Heading::East;
        case 'S': return Heading::South;
        case 'W': return Heading::West;
        default: return std::nullopt;
    }
}

Cell heading_delta(Heading h) {
    switch (h) {
        case Heading::North: return {0, -1};
        case Heading::East: return {1, 0};
        case Heading::South: return {0, 1};
        case Heading::West: return {-1, 0};
    }
    return {0, 0};
}

std::pair<Cell, Cell> sample_endpoints(const House& house, RngStream& rng) {
    if (house.rooms.size() < 2)
        throw std::invalid_argument("sample_endpoints: house has fewer than 2 rooms");
    std::size_t a = rng.bounded(house.rooms.size());
    std::size_t b = rng.bounded(house.rooms.size() - 1);
    if (b >= a) ++b;
    auto cell_in = [&](const Room& r) {
        int x = static_cast<int>(rng.uniform_int(r.bbox.x, r.bbox.x + r.bbox.w - 1));
        int y = static_cast<int>(rng.uniform_int(r.bbox.y, r.bbox.y + r.bbox.h - 1));
        return Cell{x, y};
    };
    return {cell_in(house.rooms[a]), cell_in(house.rooms[b])};
}

std::optional<std::vector<Cell>> shortest_path(const House& house, Cell start, Cell goal) {
    if (!house.walkable(start) || !house.walkable(goal))
        throw std::invalid_argument("shortest_path: endpoint not walkable");
    if (start == goal) return std::vector<Cell>{start};

    // Fixed N, E, S, W expansion order keeps tie-breaking deterministic.
    static constexpr Cell kSteps[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    const int w = house.width;
    std::vector<int> prev(static_cast<std::size_t>(w) * house.height, -2);
    auto idx = [&](Cell c) { return static_cast<std::size_t>(c.y) * w + c.x; };
    std::queue<Cell> frontier;
    frontier.push(start);
    prev[idx(start)] = -1;
    while (!frontier.empty()) {
        Cell cur = frontier.front();
        frontier.pop();
        for (const Cell& d : kSteps) {
            Cell nxt{cur.x + d.x, cur.y + d.y};
            if (!house.walkable(nxt) || prev[idx(nxt)] != -2) continue;
            prev[idx(nxt)] = static_cast<int>(idx(cur));
            if (nxt == goal) {
                std::vector<Cell> path{goal};
                Cell c = nxt;
                while (!(c == start)) {
                    int p = prev[idx(c)];
                    c = Cell{p % w, p / w};
                    path.push_back(c);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            frontier.push(nxt);
        }
    }
    return std::nullopt;
}

namespace {

Heading step_heading(Cell from, Cell to) {
    if (to.x == from.x + 1 && to.y == from.y) return Heading::East;
    if (to.x == from.x - 1 && to.y == from.y) return Heading::West;
    if (to.y == from.y + 1 && to.x == from.x) return Heading::South;
    if (to.y == from.y - 1 && to.x == from.x) return Heading::North;
    throw std::invalid_argument("path cells are not 4-adjacent");
}

}  // namespace

std::optional<Trajectory> path_to_trajectory(const House& house,
                                             const std::vector<Cell>& path,
                                             TrajectoryError* err) {
    if (path.empty()) throw std::invalid_argument("path_to_trajectory: empty path");
    for (const Cell& c : path)
        if (!house.walkable(c))
            throw std::invalid_argument("path_to_trajectory: path crosses a wall");

    Trajectory traj;
    traj.house_id = house.id;
    if (path.size() == 1) {
        traj.poses.push_back({path[0], Heading::North});
        return traj;
    }
    std::vector<Heading> step(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        step[i] = step_heading(path[i], path[i + 1]);

    traj.poses.push_back({path[0], step[0]});
    for (std::size_t i = 1; i < path.size(); ++i) {
        traj.poses.push_back({path[i], step[i - 1]});  // arrival
        if (i < path.size() - 1 && step[i] != step[i - 1])
            traj.poses.push_back({path[i], step[i]});  // turn in place
    }
    if (traj.length() > kMaxTrajectoryLen) {
        if (err) *err = TrajectoryError::TooLong;
        return std::nullopt;
    }
    return traj;
}

std::vector<std::size_t> subsample_indices(std::size_t n, RngStream& rng,
                                           std::size_t chunk) {
    if (n == 0) throw std::invalid_argument("subsample_indices: empty input");
    assert(chunk > 0);
    std::vector<std::size_t> out;
    out.reserve((n + chunk - 1) / chunk);
    for (std::size_t lo = 0; lo < n; lo += chunk) {
        std::size_t hi = std::min(lo + chunk, n);
        out.push_back(lo + rng.bounded(hi - lo));
    }
    return out;
}

}  // namespace houseqa
