#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "houseqa/rng.hpp"
#include "houseqa/scene.hpp"

namespace houseqa {

enum class Heading : std::uint8_t { North, East, South, West };

char heading_char(Heading h);
std::optional<Heading> heading_from_char(char c);

// Unit offset of a heading; y grows southwards.
Cell heading_delta(Heading h);

struct Pose {
    Cell cell;
    Heading heading = Heading::North;
    bool operator==(const Pose&) const = default;
};

inline constexpr int kMaxTrajectoryLen = 140;

// The pose stream standing in for a rendered video: one pose per path cell
// plus one inserted pose per 90-degree turn, capped at 140.
struct Trajectory {
    std::string house_id;
    std::string video_id;
    std::vector<Pose> poses;

    bool operator==(const Trajectory&) const = default;
    int length() const { return static_cast<int>(poses.size()); }
};

// Two walkable cells in distinct rooms, drawn uniformly over room pairs and
// then over each room's floor cells. Throws std::invalid_argument when the
// house has fewer than two rooms.
std::pair<Cell, Cell> sample_endpoints(const House& house, RngStream& rng);

// BFS over walkable cells with fixed neighbor order N, E, S, W, so the
// returned path is deterministic. nullopt when the goal is unreachable.
// start == goal yields a single-cell path.
std::optional<std::vector<Cell>> shortest_path(const House& house, Cell start, Cell goal);

enum class TrajectoryError { TooLong };

// Converts a path into poses. The agent arrives at each cell facing its
// incoming direction and inserts one turn pose where the outgoing direction
// differs. Paths never contain 180-degree turns (a shortest 4-connected path
// cannot revisit a cell). Fails with TooLong above 140 poses; the caller
// resamples endpoints.
std::optional<Trajectory> path_to_trajectory(const House& house,
                                             const std::vector<Cell>& path,
                                             TrajectoryError* err = nullptr);

// Frame sub-sampling: each consecutive chunk of 4 input indices contributes
// one uniformly drawn element, order preserved. Output length is
// ceil(n / 4); length 140 becomes exactly 35. Throws std::invalid_argument
// on empty input.
std::vector<std::size_t> subsample_indices(std::size_t n, RngStream& rng,
                                           std::size_t chunk = 4);

}  // namespace houseqa
