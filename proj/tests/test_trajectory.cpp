#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>

#include "houseqa/rng.hpp"
#include "houseqa/trajectory.hpp"
#include "oracles.hpp"

using namespace houseqa;
using namespace houseqa::testing;

TEST_CASE("bfs distances match uniform-cost search on random houses") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        House h = random_test_house(seed);
        RngStream rng(derive_seed(seed, {"endpoints"}));
        for (int trial = 0; trial < 5; ++trial) {
            auto [start, goal] = sample_endpoints(h, rng);
            auto path = shortest_path(h, start, goal);
            auto oracle = ucs_distance(h, start, goal);
            REQUIRE(path.has_value());
            REQUIRE(oracle.has_value());
            CHECK(static_cast<int>(path->size()) == *oracle + 1);
        }
    }
}

TEST_CASE("paths are 4-connected and walkable end to end") {
    House h = random_test_house(3);
    RngStream rng(9);
    auto [start, goal] = sample_endpoints(h, rng);
    auto path = shortest_path(h, start, goal);
    REQUIRE(path.has_value());
    CHECK(path->front() == start);
    CHECK(path->back() == goal);
    for (std::size_t i = 0; i < path->size(); ++i) {
        CHECK(h.walkable((*path)[i]));
        if (i > 0) {
            int dx = std::abs((*path)[i].x - (*path)[i - 1].x);
            int dy = std::abs((*path)[i].y - (*path)[i - 1].y);
            CHECK(dx + dy == 1);
        }
    }
}

TEST_CASE("start equals goal yields the single-cell path") {
    House h = two_room_house();
    auto path = shortest_path(h, {2, 2}, {2, 2});
    REQUIRE(path.has_value());
    CHECK(path->size() == 1);
}

TEST_CASE("unreachable goals report no path, agreeing with the oracle") {
    House h = two_room_house();
    h.set_cell({4, 2}, CellKind::Wall);  // brick up the only doorway
    h.doorways.clear();
    auto path = shortest_path(h, {2, 2}, {6, 2});
    auto oracle = ucs_distance(h, {2, 2}, {6, 2});
    CHECK_FALSE(path.has_value());
    CHECK_FALSE(oracle.has_value());
}

TEST_CASE("bfs is deterministic") {
    House h = random_test_house(5);
    RngStream rng(2);
    auto [start, goal] = sample_endpoints(h, rng);
    auto a = shortest_path(h, start, goal);
    auto b = shortest_path(h, start, goal);
    REQUIRE(a.has_value());
    CHECK(*a == *b);
}

TEST_CASE("endpoints land in two different rooms") {
    House h = random_test_house(8);
    RngStream rng(4);
    for (int i = 0; i < 20; ++i) {
        auto [start, goal] = sample_endpoints(h, rng);
        const Room* a = h.room_at(start);
        const Room* b = h.room_at(goal);
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        CHECK(a->id != b->id);
    }
}

TEST_CASE("sample_endpoints refuses single-room houses") {
    House h = two_room_house();
    h.rooms.pop_back();
    h.doorways.clear();
    h.set_cell({4, 2}, CellKind::Wall);
    for (int y = 1; y <= 3; ++y) {
        for (int x = 5; x <= 7; ++x) h.set_cell({x, y}, CellKind::Wall);
    }
    RngStream rng(1);
    CHECK_THROWS_AS(sample_endpoints(h, rng), std::invalid_argument);
}

TEST_CASE("straight paths produce one pose per cell with constant heading") {
    House h = two_room_house();
    std::vector<Cell> path{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}};
    auto traj = path_to_trajectory(h, path);
    REQUIRE(traj.has_value());
    CHECK(traj->poses.size() == 5);
    for (const Pose& p : traj->poses) CHECK(p.heading == Heading::East);
}

TEST_CASE("a turn inserts exactly one extra pose at the corner") {
    House h = two_room_house();
    std::vector<Cell> path{{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}};
    auto traj = path_to_trajectory(h, path);
    REQUIRE(traj.has_value());
    // 5 cells + 1 turn = 6 poses; the agent arrives at (1,3) facing south,
    // turns east in place, then moves on.
    REQUIRE(traj->poses.size() == 6);
    CHECK(traj->poses[0].heading == Heading::South);
    CHECK(traj->poses[2] == Pose{{1, 3}, Heading::South});
    CHECK(traj->poses[3] == Pose{{1, 3}, Heading::East});
    CHECK(traj->poses[4] == Pose{{2, 3}, Heading::East});
}

TEST_CASE("first pose faces the first step direction") {
    House h = two_room_house();
    std::vector<Cell> path{{2, 2}, {2, 1}};
    auto traj = path_to_trajectory(h, path);
    REQUIRE(traj.has_value());
    CHECK(traj->poses.front().heading == Heading::North);
}

TEST_CASE("overlong paths fail with TooLong") {
    // A serpentine path through a big synthetic room overruns the cap.
    House h;
    h.id = "long";
    h.width = 80;
    h.height = 80;
    h.cells.assign(80 * 80, CellKind::Wall);
    h.rooms.push_back({"r", "hallway", {1, 1, 78, 78}});
    for (int y = 1; y < 79; ++y) {
        for (int x = 1; x < 79; ++x) h.set_cell({x, y}, CellKind::RoomFloor);
    }
    std::vector<Cell> path;
    int x = 1, y = 1, dir = 1;
    while (static_cast<int>(path.size()) <= kMaxTrajectoryLen + 4) {
        path.push_back({x, y});
        int nx = x + dir;
        if (nx >= 79 || nx < 1) {
            ++y;
            dir = -dir;
        } else {
            x = nx;
        }
    }
    TrajectoryError err{};
    auto traj = path_to_trajectory(h, path, &err);
    CHECK_FALSE(traj.has_value());
    CHECK(err == TrajectoryError::TooLong);
}

TEST_CASE("heading characters round trip") {
    for (Heading hd : {Heading::North, Heading::East, Heading::South, Heading::West}) {
        auto back = heading_from_char(heading_char(hd));
        REQUIRE(back.has_value());
        CHECK(*back == hd);
    }
    CHECK_FALSE(heading_from_char('x').has_value());
}

TEST_CASE("subsample keeps one index per chunk of four, in order") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 35, 97, 139, 140}) {
            RngStream rng(derive_seed(seed, {"sub"}));
            auto picks = subsample_indices(n, rng);
            CHECK(picks.size() == (n + 3) / 4);
            for (std::size_t k = 0; k < picks.size(); ++k) {
                CHECK(picks[k] >= 4 * k);
                CHECK(picks[k] < std::min(4 * k + 4, n));
                if (k > 0) CHECK(picks[k] > picks[k - 1]);
            }
        }
    }
}

TEST_CASE("the 140 frame cap subsamples to exactly 35") {
    RngStream rng(77);
    CHECK(subsample_indices(140, rng).size() == 35);
}

TEST_CASE("subsample rejects empty input") {
    RngStream rng(1);
    CHECK_THROWS_AS(subsample_indices(0, rng), std::invalid_argument);
}
