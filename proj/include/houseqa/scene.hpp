#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "houseqa/lexicon.hpp"

namespace houseqa {

struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

// Axis-aligned cell rectangle, half-open is avoided on purpose: (x, y) is the
// top-left cell, w/h are cell counts.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(Cell c) const {
        return c.x >= x && c.x < x + w && c.y >= y && c.y < y + h;
    }
    int area() const { return w * h; }
    bool overlaps(const Rect& o) const {
        return x < o.x + o.w && o.x < x + w && y < o.y + o.h && o.y < y + h;
    }
    auto operator<=>(const Rect&) const = default;
};

struct Room {
    std::string id;
    std::string room_type;
    Rect bbox;

    bool operator==(const Room&) const = default;
    int area_cells() const { return bbox.area(); }
};

struct ObjectInstance {
    std::string id;
    std::string obj_type;
    std::string color;
    std::set<std::string> extra_attrs;
    Cell cell;
    double size = 1.0;  // abstract positive volume, total order only
    std::string room_id;

    bool operator==(const ObjectInstance&) const = default;
    bool carries_attr(const std::string& attr) const {
        return attr == color || extra_attrs.count(attr) > 0;
    }
};

enum class CellKind : std::uint8_t { Wall, RoomFloor, Doorway };

struct Doorway {
    std::string room_a;
    std::string room_b;
    Cell cell;

    bool operator==(const Doorway&) const = default;
};

// Grid-world house. Rooms are disjoint rectangles of floor cells separated by
// one-cell wall bands; doorway cells are carved out of those bands and belong
// to no room. Walkable = room floor or doorway.
struct House {
    std::string id;
    int width = 0;
    int height = 0;
    std::vector<CellKind> cells;  // row-major, y * width + x
    std::vector<Room> rooms;
    std::vector<Doorway> doorways;
    std::vector<ObjectInstance> objects;

    bool operator==(const House&) const = default;
    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    CellKind cell_kind(Cell c) const {
        return cells[static_cast<std::size_t>(c.y) * width + c.x];
    }
    void set_cell(Cell c, CellKind k) {
        cells[static_cast<std::size_t>(c.y) * width + c.x] = k;
    }
    bool walkable(Cell c) const {
        return in_bounds(c) && cell_kind(c) != CellKind::Wall;
    }
    bool wall(Cell c) const { return !in_bounds(c) || cell_kind(c) == CellKind::Wall; }

    const Room* find_room(const std::string& room_id) const;
    const ObjectInstance* find_object(const std::string& object_id) const;
    // Room whose bbox contains the cell, nullptr for walls and doorways.
    const Room* room_at(Cell c) const;
};

// Rooms separated by exactly one wall cell along a shared span; this is where
// a doorway can be carved.
bool rooms_edge_adjacent(const Room& a, const Room& b);

struct Violation {
    std::string invariant;
    std::string entity;
    std::string detail;
};

// Checks every structural invariant of a house; returns one descriptor per
// violation (empty means valid). Pure and deterministic.
std::vector<Violation> validate_house(const House& house);

// Rooms sharing a doorway with room_id. Throws std::out_of_range for an
// unknown room id. Symmetric and irreflexive by construction.
std::set<std::string> adjacent_rooms(const House& house, const std::string& room_id);

// Renders the grid as one string per row ('#' wall, '.' floor, '+' doorway,
// 'o' object cell). Diagnostic only.
std::vector<std::string> ascii_grid(const House& house, bool mark_objects = false);

}  // namespace houseqa
