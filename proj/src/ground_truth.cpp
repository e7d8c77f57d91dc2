#include "houseqa/ground_truth.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace houseqa {

std::vector<std::string> resolve_room_sequence(const House& house,
                                               const std::vector<Pose>& poses) {
    std::vector<std::string> out;
    out.reserve(poses.size());
    std::string last_room;
    for (const Pose& p : poses) {
        const Room* r = house.room_at(p.cell);
        if (r != nullptr) {
            last_room = r->id;
        } else if (last_room.empty()) {
            throw std::invalid_argument(
                "resolve_room_sequence: trajectory starts on a doorway cell");
        }
        out.push_back(last_room);
    }
    return out;
}

FrameGT frame_ground_truth(const House& house, const Pose& pose, int frame_index,
                           const std::string& current_room, const FovConfig& fov) {
    FrameGT gt;
    gt.frame_index = frame_index;
    gt.current_room = current_room;
    gt.linked_rooms.insert(current_room);

    std::set<std::string> linkable = adjacent_rooms(house, current_room);
    linkable.insert(current_room);

    for (const std::string& oid : visible_objects(house, pose, fov)) {
        const ObjectInstance* obj = house.find_object(oid);
        if (!linkable.count(obj->room_id)) continue;  // seen two rooms away: drop
        gt.visible_objects.insert(oid);
        gt.linked_rooms.insert(obj->room_id);
    }
    return gt;
}

TrajectoryGroundTruth aggregate_gt(const std::string& house_id,
                                   const std::string& video_id,
                                   const std::vector<FrameGT>& frames) {
    if (frames.empty()) throw std::invalid_argument("aggregate_gt: empty frame list");
    TrajectoryGroundTruth gt;
    gt.house_id = house_id;
    gt.video_id = video_id;
    gt.frames = frames;
    for (const FrameGT& f : frames) {
        for (const std::string& oid : f.visible_objects) {
            gt.seen_objects.insert(oid);
            auto it = gt.first_seen.find(oid);
            if (it == gt.first_seen.end()) gt.first_seen[oid] = f.frame_index;
            gt.last_seen[oid] = f.frame_index;
        }
        for (const std::string& rid : f.linked_rooms) gt.seen_rooms.insert(rid);
    }
    return gt;
}

TrajectoryGroundTruth compute_trajectory_gt_serial(const House& house,
                                                   const Trajectory& traj,
                                                   const FovConfig& fov) {
    std::vector<std::string> rooms = resolve_room_sequence(house, traj.poses);
    std::vector<FrameGT> frames(traj.poses.size());
    for (std::size_t i = 0; i < traj.poses.size(); ++i)
        frames[i] = frame_ground_truth(house, traj.poses[i], static_cast<int>(i),
                                       rooms[i], fov);
    return aggregate_gt(house.id, traj.video_id, frames);
}

TrajectoryGroundTruth compute_trajectory_gt(const House& house, const Trajectory& traj,
                                            const FovConfig& fov, int threads) {
    std::vector<std::string> rooms = resolve_room_sequence(house, traj.poses);
    std::vector<FrameGT> frames(traj.poses.size());
    const int n = static_cast<int>(traj.poses.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (int i = 0; i < n; ++i)
        frames[static_cast<std::size_t>(i)] = frame_ground_truth(
            house, traj.poses[static_cast<std::size_t>(i)], i,
            rooms[static_cast<std::size_t>(i)], fov);
    return aggregate_gt(house.id, traj.video_id, frames);
}

}  // namespace houseqa
