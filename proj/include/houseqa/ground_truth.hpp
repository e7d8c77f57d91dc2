#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "houseqa/scene.hpp"
#include "houseqa/trajectory.hpp"
#include "houseqa/visibility.hpp"

namespace houseqa {

// What one frame of the trajectory "sees". Objects glimpsed in rooms that are
// neither the current room nor adjacent to it are dropped, so linked_rooms is
// always a subset of {current} ∪ adjacent(current).
struct FrameGT {
    int frame_index = 0;
    std::string current_room;
    std::set<std::string> visible_objects;
    std::set<std::string> linked_rooms;

    bool operator==(const FrameGT&) const = default;
};

struct TrajectoryGroundTruth {
    std::string house_id;
    std::string video_id;
    std::vector<FrameGT> frames;
    std::set<std::string> seen_objects;
    std::set<std::string> seen_rooms;
    std::map<std::string, int> first_seen;  // object id -> frame index
    std::map<std::string, int> last_seen;

    bool operator==(const TrajectoryGroundTruth&) const = default;
};

// Room occupied at each pose. A pose on a doorway cell resolves to the room
// entered most recently; the first pose must lie inside a room.
std::vector<std::string> resolve_room_sequence(const House& house,
                                               const std::vector<Pose>& poses);

// Ground truth for a single pose. `current_room` comes from
// resolve_room_sequence (doorway poses keep the last entered room).
FrameGT frame_ground_truth(const House& house, const Pose& pose, int frame_index,
                           const std::string& current_room, const FovConfig& fov);

// Unions and first/last-seen indices over the frame list. Idempotent:
// re-aggregating the frames of the result reproduces it. Throws
// std::invalid_argument on an empty list.
TrajectoryGroundTruth aggregate_gt(const std::string& house_id,
                                   const std::string& video_id,
                                   const std::vector<FrameGT>& frames);

// Serial reference pipeline: rooms, per-frame ground truth, aggregate.
TrajectoryGroundTruth compute_trajectory_gt_serial(const House& house,
                                                   const Trajectory& traj,
                                                   const FovConfig& fov);

// OpenMP kernel over frames; bit-identical to the serial reference for any
// thread count (each frame is independent). threads <= 0 uses the runtime
// default.
TrajectoryGroundTruth compute_trajectory_gt(const House& house, const Trajectory& traj,
                                            const FovConfig& fov, int threads = 0);

}  // namespace houseqa
