#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "houseqa/ground_truth.hpp"
#include "houseqa/rng.hpp"
#include "houseqa/visibility.hpp"
#include "oracles.hpp"

using namespace houseqa;
using namespace houseqa::testing;

namespace {

Pose random_pose(const House& house, RngStream& rng) {
    std::vector<Cell> walkable;
    for (int y = 0; y < house.height; ++y) {
        for (int x = 0; x < house.width; ++x) {
            if (house.walkable({x, y})) walkable.push_back({x, y});
        }
    }
    static const Heading kHeadings[4] = {Heading::North, Heading::East, Heading::South,
                                         Heading::West};
    return {rng.pick(walkable), kHeadings[rng.bounded(4)]};
}

}  // namespace

TEST_CASE("90 degree frustum boundary is inclusive and exact") {
    // Facing east: forward = dx, lateral = dy.
    CHECK(in_frustum(Heading::East, 5, 5));     // exactly on the boundary
    CHECK(in_frustum(Heading::East, 5, -5));
    CHECK(in_frustum(Heading::East, 5, 0));
    CHECK(in_frustum(Heading::East, 0, 0));     // own cell
    CHECK_FALSE(in_frustum(Heading::East, 4, 5));
    CHECK_FALSE(in_frustum(Heading::East, -1, 0));  // behind
    CHECK(in_frustum(Heading::North, 3, -3));
    CHECK_FALSE(in_frustum(Heading::North, 3, 3));
    CHECK(in_frustum(Heading::South, -2, 7));
    CHECK(in_frustum(Heading::West, -6, 6));
}

TEST_CASE("supercover touches both side cells at an exact corner crossing") {
    std::vector<Cell> visited;
    supercover_walk({0, 0}, {2, 2}, [&](Cell c) {
        visited.push_back(c);
        return true;
    });
    // The diagonal passes through cell corners; the two cells flanking each
    // corner must both be visited.
    auto contains = [&](Cell c) {
        for (Cell v : visited)
            if (v == c) return true;
        return false;
    };
    CHECK(contains({0, 0}));
    CHECK(contains({1, 1}));
    CHECK(contains({2, 2}));
    CHECK(contains({1, 0}));
    CHECK(contains({0, 1}));
}

TEST_CASE("supercover agrees with the exact segment geometry") {
    RngStream rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        Cell from{static_cast<int>(rng.bounded(12)), static_cast<int>(rng.bounded(12))};
        Cell to{static_cast<int>(rng.bounded(12)), static_cast<int>(rng.bounded(12))};
        std::set<Cell> walked;
        supercover_walk(from, to, [&](Cell c) {
            walked.insert(c);
            return true;
        });
        for (int y = 0; y < 12; ++y) {
            for (int x = 0; x < 12; ++x) {
                Cell target{x, y};
                bool geometric = segment_touches_cell(from, to, target);
                bool traversed = walked.count(target) > 0;
                CAPTURE(from.x);
                CAPTURE(from.y);
                CAPTURE(to.x);
                CAPTURE(to.y);
                CAPTURE(x);
                CAPTURE(y);
                CHECK(geometric == traversed);
            }
        }
    }
}

TEST_CASE("line of sight is blocked by walls only") {
    House h = two_room_house();
    // Across the doorway: clear. Through the wall band: blocked.
    CHECK(line_of_sight(h, {2, 2}, {6, 2}));
    CHECK_FALSE(line_of_sight(h, {2, 1}, {6, 1}));
    CHECK(line_of_sight(h, {1, 1}, {3, 3}));
}

TEST_CASE("visibility kernel matches the dense oracle on random scenes") {
    FovConfig fov;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        House h = random_test_house(seed);
        RngStream rng(derive_seed(seed, {"poses"}));
        for (int i = 0; i < 20; ++i) {
            Pose pose = random_pose(h, rng);
            auto fast = visible_objects(h, pose, fov);
            auto dense = visible_objects_oracle(h, pose, fov);
            CAPTURE(seed);
            CAPTURE(pose.cell.x);
            CAPTURE(pose.cell.y);
            CHECK(fast == dense);
        }
    }
}

TEST_CASE("max view distance is euclidean and inclusive") {
    House h;
    h.id = "corridor";
    h.width = 20;
    h.height = 3;
    h.cells.assign(20 * 3, CellKind::Wall);
    h.rooms.push_back({"r", "hallway", {1, 1, 18, 1}});
    for (int x = 1; x < 19; ++x) h.set_cell({x, 1}, CellKind::RoomFloor);
    h.objects.push_back(make_object("at-12", "vase", "red", {}, {13, 1}, "r"));
    h.objects.push_back(make_object("at-13", "vase", "red", {}, {14, 1}, "r"));
    FovConfig fov;  // max_view_distance 12
    auto seen = visible_objects(h, {{1, 1}, Heading::East}, fov);
    CHECK(seen.count("at-12") == 1);
    CHECK(seen.count("at-13") == 0);
}

TEST_CASE("room sequence keeps the last room on doorway cells") {
    House h = two_room_house();
    std::vector<Pose> poses{{{3, 2}, Heading::East},
                            {{4, 2}, Heading::East},
                            {{5, 2}, Heading::East}};
    auto rooms = resolve_room_sequence(h, poses);
    REQUIRE(rooms.size() == 3);
    CHECK(rooms[0] == "room-a");
    CHECK(rooms[1] == "room-a");  // on the doorway: still the last entered room
    CHECK(rooms[2] == "room-b");
}

TEST_CASE("room sequence rejects a trajectory starting on a doorway") {
    House h = two_room_house();
    std::vector<Pose> poses{{{4, 2}, Heading::East}};
    CHECK_THROWS_AS(resolve_room_sequence(h, poses), std::invalid_argument);
}

TEST_CASE("objects two rooms away are dropped from frame ground truth") {
    // Three rooms in a row; from room-a the far room-c is not adjacent, so
    // its objects never enter the frame even with clear line of sight.
    House h;
    h.id = "triple";
    h.width = 13;
    h.height = 5;
    h.cells.assign(13 * 5, CellKind::Wall);
    h.rooms.push_back({"room-a", "bedroom", {1, 1, 3, 3}});
    h.rooms.push_back({"room-b", "kitchen", {5, 1, 3, 3}});
    h.rooms.push_back({"room-c", "lounge", {9, 1, 3, 3}});
    for (const Room& r : h.rooms) {
        for (int y = r.bbox.y; y < r.bbox.y + r.bbox.h; ++y)
            for (int x = r.bbox.x; x < r.bbox.x + r.bbox.w; ++x)
                h.set_cell({x, y}, CellKind::RoomFloor);
    }
    h.doorways.push_back({"room-a", "room-b", {4, 2}});
    h.doorways.push_back({"room-b", "room-c", {8, 2}});
    h.set_cell({4, 2}, CellKind::Doorway);
    h.set_cell({8, 2}, CellKind::Doorway);
    h.objects.push_back(make_object("near", "vase", "red", {}, {6, 2}, "room-b"));
    h.objects.push_back(make_object("far", "vase", "blue", {}, {10, 2}, "room-c"));
    REQUIRE(validate_house(h).empty());

    Pose pose{{1, 2}, Heading::East};
    FovConfig fov;
    auto raw = visible_objects(h, pose, fov);
    CHECK(raw.count("near") == 1);
    CHECK(raw.count("far") == 1);  // geometrically visible down the corridor

    FrameGT frame = frame_ground_truth(h, pose, 0, "room-a", fov);
    CHECK(frame.visible_objects.count("near") == 1);
    CHECK(frame.visible_objects.count("far") == 0);
    CHECK(frame.linked_rooms == std::set<std::string>{"room-a", "room-b"});
}

TEST_CASE("aggregation is idempotent and tracks first and last sightings") {
    FrameGT f0{0, "room-a", {"obj-1"}, {"room-a"}};
    FrameGT f1{1, "room-a", {"obj-1", "obj-2"}, {"room-a", "room-b"}};
    FrameGT f2{2, "room-b", {"obj-2"}, {"room-b"}};
    auto gt = aggregate_gt("h", "h-v000", {f0, f1, f2});
    CHECK(gt.seen_objects == std::set<std::string>{"obj-1", "obj-2"});
    CHECK(gt.seen_rooms == std::set<std::string>{"room-a", "room-b"});
    CHECK(gt.first_seen.at("obj-1") == 0);
    CHECK(gt.last_seen.at("obj-1") == 1);
    CHECK(gt.first_seen.at("obj-2") == 1);
    CHECK(gt.last_seen.at("obj-2") == 2);
    auto again = aggregate_gt(gt.house_id, gt.video_id, gt.frames);
    CHECK(again == gt);
    CHECK_THROWS_AS(aggregate_gt("h", "v", {}), std::invalid_argument);
}

TEST_CASE("parallel ground truth is bit-identical to the serial reference") {
    FovConfig fov;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        House h = random_test_house(seed);
        RngStream rng(derive_seed(seed, {"traj"}));
        auto [start, goal] = sample_endpoints(h, rng);
        auto path = shortest_path(h, start, goal);
        REQUIRE(path.has_value());
        auto traj = path_to_trajectory(h, *path);
        REQUIRE(traj.has_value());
        traj->video_id = "v";
        auto serial = compute_trajectory_gt_serial(h, *traj, fov);
        for (int threads : {1, 2, 5}) {
            auto parallel = compute_trajectory_gt(h, *traj, fov, threads);
            CHECK(serial == parallel);
        }
    }
}
