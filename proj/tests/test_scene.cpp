#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "houseqa/scene.hpp"
#include "oracles.hpp"

using namespace houseqa;
using namespace houseqa::testing;

TEST_CASE("two-room fixture is structurally valid") {
    House h = two_room_house();
    h.objects.push_back(make_object("obj-0", "sofa", "red", {}, {2, 2}, "room-a"));
    CHECK(validate_house(h).empty());
}

TEST_CASE("cell kinds and walkability") {
    House h = two_room_house();
    CHECK(h.cell_kind({0, 0}) == CellKind::Wall);
    CHECK(h.cell_kind({2, 2}) == CellKind::RoomFloor);
    CHECK(h.cell_kind({4, 2}) == CellKind::Doorway);
    CHECK(h.walkable({4, 2}));
    CHECK_FALSE(h.walkable({4, 1}));
    CHECK_FALSE(h.walkable({-1, 0}));
    CHECK(h.wall({9, 2}));  // out of bounds counts as wall
}

TEST_CASE("room_at maps floors to rooms, doorways and walls to nothing") {
    House h = two_room_house();
    REQUIRE(h.room_at({1, 1}) != nullptr);
    CHECK(h.room_at({1, 1})->id == "room-a");
    CHECK(h.room_at({6, 3})->id == "room-b");
    CHECK(h.room_at({4, 2}) == nullptr);
    CHECK(h.room_at({0, 0}) == nullptr);
}

TEST_CASE("find helpers return nullptr on unknown ids") {
    House h = two_room_house();
    h.objects.push_back(make_object("obj-0", "sofa", "red", {}, {2, 2}, "room-a"));
    CHECK(h.find_room("room-a") != nullptr);
    CHECK(h.find_room("room-z") == nullptr);
    CHECK(h.find_object("obj-0") != nullptr);
    CHECK(h.find_object("obj-9") == nullptr);
}

TEST_CASE("rooms_edge_adjacent wants exactly a unit wall band with overlap") {
    Room a{"a", "bedroom", {1, 1, 3, 3}};
    Room b{"b", "kitchen", {5, 1, 3, 3}};   // one wall column between
    Room c{"c", "kitchen", {6, 1, 3, 3}};   // two wall columns
    Room d{"d", "kitchen", {9, 5, 3, 3}};   // diagonal, no shared span
    Room e{"e", "kitchen", {1, 5, 3, 3}};   // below a, unit band
    CHECK(rooms_edge_adjacent(a, b));
    CHECK(rooms_edge_adjacent(b, a));
    CHECK_FALSE(rooms_edge_adjacent(a, c));
    CHECK_FALSE(rooms_edge_adjacent(b, d));
    CHECK(rooms_edge_adjacent(a, e));
}

TEST_CASE("adjacent_rooms is symmetric and throws on unknown ids") {
    House h = two_room_house();
    CHECK(adjacent_rooms(h, "room-a") == std::set<std::string>{"room-b"});
    CHECK(adjacent_rooms(h, "room-b") == std::set<std::string>{"room-a"});
    CHECK_THROWS_AS(adjacent_rooms(h, "nope"), std::out_of_range);
}

TEST_CASE("validator flags an object on a wall cell") {
    House h = two_room_house();
    h.objects.push_back(make_object("obj-0", "sofa", "red", {}, {4, 1}, "room-a"));
    auto violations = validate_house(h);
    CHECK_FALSE(violations.empty());
}

TEST_CASE("validator flags duplicate ids and shared cells") {
    House h = two_room_house();
    h.objects.push_back(make_object("obj-0", "sofa", "red", {}, {2, 2}, "room-a"));
    h.objects.push_back(make_object("obj-0", "lamp", "blue", {}, {2, 2}, "room-a"));
    auto violations = validate_house(h);
    bool dup_id = false, dup_cell = false;
    for (const Violation& v : violations) {
        if (v.invariant == "object-id-unique") dup_id = true;
        if (v.invariant == "object-cell-unique") dup_cell = true;
    }
    CHECK(dup_id);
    CHECK(dup_cell);
}

TEST_CASE("validator flags a wrong room assignment") {
    House h = two_room_house();
    h.objects.push_back(make_object("obj-0", "sofa", "red", {}, {2, 2}, "room-b"));
    auto violations = validate_house(h);
    REQUIRE_FALSE(violations.empty());
    bool found = false;
    for (const Violation& v : violations) {
        if (v.invariant == "object-room-matches-cell" || v.invariant == "object-cell-in-room") {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("validator flags disconnected rooms") {
    House h = two_room_house();
    h.doorways.clear();
    h.set_cell({4, 2}, CellKind::Wall);
    auto violations = validate_house(h);
    bool disconnected = false;
    for (const Violation& v : violations) {
        if (v.invariant == "rooms-connected") disconnected = true;
    }
    CHECK(disconnected);
}

TEST_CASE("validator flags a doorway between non-adjacent rooms") {
    House h = two_room_house();
    h.rooms.push_back({"room-c", "hallway", {1, 1, 0, 0}});  // empty bbox too
    h.doorways.push_back({"room-a", "room-c", {4, 2}});
    auto violations = validate_house(h);
    CHECK_FALSE(violations.empty());
}

TEST_CASE("ascii_grid round trips the cell kinds") {
    House h = two_room_house();
    h.objects.push_back(make_object("obj-0", "sofa", "red", {}, {2, 2}, "room-a"));
    auto rows = ascii_grid(h);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "#########");
    CHECK(rows[2] == "#...+...#");
    auto marked = ascii_grid(h, true);
    CHECK(marked[2] == "#.o.+...#");
}

TEST_CASE("carries_attr covers color and extras") {
    ObjectInstance o = make_object("obj-0", "sofa", "red", {"large", "wooden"}, {2, 2}, "room-a");
    CHECK(o.carries_attr("red"));
    CHECK(o.carries_attr("large"));
    CHECK_FALSE(o.carries_attr("blue"));
}
