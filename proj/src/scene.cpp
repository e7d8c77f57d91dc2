#include "houseqa/scene.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <stdexcept>

namespace houseqa {

const Room* House::find_room(const std::string& room_id) const {
    for (const Room& r : rooms)
        if (r.id == room_id) return &r;
    return nullptr;
}

const ObjectInstance* House::find_object(const std::string& object_id) const {
    for (const ObjectInstance& o : objects)
        if (o.id == object_id) return &o;
    return nullptr;
}

const Room* House::room_at(Cell c) const {
    for (const Room& r : rooms)
        if (r.bbox.contains(c)) return &r;
    return nullptr;
}

bool rooms_edge_adjacent(const Room& a, const Room& b) {
    const Rect& ra = a.bbox;
    const Rect& rb = b.bbox;
    // Vertical wall band between horizontally neighboring rooms.
    if (ra.x + ra.w + 1 == rb.x || rb.x + rb.w + 1 == ra.x) {
        int lo = std::max(ra.y, rb.y);
        int hi = std::min(ra.y + ra.h, rb.y + rb.h);
        return lo < hi;
    }
    // Horizontal wall band.
    if (ra.y + ra.h + 1 == rb.y || rb.y + rb.h + 1 == ra.y) {
        int lo = std::max(ra.x, rb.x);
        int hi = std::min(ra.x + ra.w, rb.x + rb.w);
        return lo < hi;
    }
    return false;
}

std::vector<Violation> validate_house(const House& house) {
    std::vector<Violation> out;
    auto add = [&](const char* inv, const std::string& entity, std::string detail) {
        out.push_back({inv, entity, std::move(detail)});
    };

    if (house.width <= 0 || house.height <= 0 ||
        house.cells.size() != static_cast<std::size_t>(house.width) * house.height) {
        add("grid-shape", house.id, "cell array does not match width*height");
        return out;  // nothing else is checkable
    }

    std::map<std::string, const Room*> rooms_by_id;
    for (const Room& r : house.rooms) {
        if (!rooms_by_id.emplace(r.id, &r).second)
            add("room-id-unique", r.id, "duplicate room id");
        if (r.bbox.w <= 0 || r.bbox.h <= 0) add("room-bbox-nonempty", r.id, "empty bbox");
        if (r.bbox.x < 0 || r.bbox.y < 0 || r.bbox.x + r.bbox.w > house.width ||
            r.bbox.y + r.bbox.h > house.height)
            add("room-bbox-in-grid", r.id, "bbox exceeds grid");
    }
    for (std::size_t i = 0; i < house.rooms.size(); ++i)
        for (std::size_t j = i + 1; j < house.rooms.size(); ++j)
            if (house.rooms[i].bbox.overlaps(house.rooms[j].bbox))
                add("room-bbox-disjoint", house.rooms[i].id,
                    "overlaps " + house.rooms[j].id);

    // Walkable cells partition into room floors and doorway cells.
    std::set<Cell> doorway_cells;
    for (const Doorway& d : house.doorways) doorway_cells.insert(d.cell);
    for (int y = 0; y < house.height; ++y) {
        for (int x = 0; x < house.width; ++x) {
            Cell c{x, y};
            CellKind k = house.cell_kind(c);
            const Room* r = house.room_at(c);
            bool is_doorway = doorway_cells.count(c) > 0;
            if (k == CellKind::Wall) {
                if (r != nullptr)
                    add("room-floor-walkable", r->id,
                        "wall cell inside room bbox at (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");
                if (is_doorway)
                    add("doorway-walkable", house.id,
                        "doorway cell marked wall at (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");
                continue;
            }
            if (k == CellKind::Doorway && !is_doorway)
                add("doorway-listed", house.id,
                    "doorway-marked cell not in doorway list at (" + std::to_string(x) +
                        "," + std::to_string(y) + ")");
            if (k == CellKind::RoomFloor && r == nullptr)
                add("walkable-in-room", house.id,
                    "floor cell outside every room at (" + std::to_string(x) + "," +
                        std::to_string(y) + ")");
            if (k == CellKind::Doorway && r != nullptr)
                add("doorway-outside-rooms", house.id,
                    "doorway cell inside room bbox of " + r->id);
        }
    }

    for (const Doorway& d : house.doorways) {
        auto a = rooms_by_id.find(d.room_a);
        auto b = rooms_by_id.find(d.room_b);
        if (a == rooms_by_id.end() || b == rooms_by_id.end()) {
            add("doorway-rooms-exist", d.room_a + "/" + d.room_b, "unknown room id");
            continue;
        }
        if (d.room_a == d.room_b) add("doorway-distinct-rooms", d.room_a, "self doorway");
        if (!rooms_edge_adjacent(*a->second, *b->second))
            add("doorway-rooms-adjacent", d.room_a + "/" + d.room_b,
                "rooms not separated by a unit wall band");
        if (!house.in_bounds(d.cell) || house.cell_kind(d.cell) != CellKind::Doorway)
            add("doorway-cell-marked", d.room_a + "/" + d.room_b,
                "doorway cell not marked in grid");
    }

    // Room adjacency graph (via doorways) must be connected.
    if (!house.rooms.empty()) {
        std::map<std::string, std::set<std::string>> adj;
        for (const Doorway& d : house.doorways) {
            adj[d.room_a].insert(d.room_b);
            adj[d.room_b].insert(d.room_a);
        }
        std::set<std::string> visited;
        std::queue<std::string> q;
        q.push(house.rooms.front().id);
        visited.insert(house.rooms.front().id);
        while (!q.empty()) {
            std::string cur = q.front();
            q.pop();
            for (const std::string& n : adj[cur])
                if (visited.insert(n).second) q.push(n);
        }
        for (const Room& r : house.rooms)
            if (!visited.count(r.id))
                add("rooms-connected", r.id, "unreachable from " + house.rooms.front().id);
    }

    std::set<std::string> object_ids;
    std::set<Cell> object_cells;
    for (const ObjectInstance& o : house.objects) {
        if (!object_ids.insert(o.id).second) add("object-id-unique", o.id, "duplicate id");
        if (o.size <= 0.0) add("object-size-positive", o.id, "size must be > 0");
        if (o.extra_attrs.count(o.color) > 0)
            add("object-color-not-extra", o.id, "color listed in extra_attrs");
        auto r = rooms_by_id.find(o.room_id);
        if (r == rooms_by_id.end()) {
            add("object-room-exists", o.id, "unknown room " + o.room_id);
        } else if (!r->second->bbox.contains(o.cell)) {
            add("object-cell-in-room", o.id, "cell outside bbox of " + o.room_id);
        }
        const Room* holder = house.room_at(o.cell);
        if (holder != nullptr && holder->id != o.room_id)
            add("object-room-matches-cell", o.id,
                "cell lies in " + holder->id + " but room_id is " + o.room_id);
        if (!object_cells.insert(o.cell).second)
            add("object-cell-unique", o.id, "cell already occupied");
    }

    return out;
}

std::set<std::string> adjacent_rooms(const House& house, const std::string& room_id) {
    if (house.find_room(room_id) == nullptr)
        throw std::out_of_range("adjacent_rooms: unknown room id '" + room_id + "'");
    std::set<std::string> out;
    for (const Doorway& d : house.doorways) {
        if (d.room_a == room_id && d.room_b != room_id) out.insert(d.room_b);
        if (d.room_b == room_id && d.room_a != room_id) out.insert(d.room_a);
    }
    return out;
}

std::vector<std::string> ascii_grid(const House& house, bool mark_objects) {
    std::vector<std::string> rows;
    rows.reserve(house.height);
    for (int y = 0; y < house.height; ++y) {
        std::string row(house.width, '#');
        for (int x = 0; x < house.width; ++x) {
            switch (house.cell_kind({x, y})) {
                case CellKind::Wall: row[x] = '#'; break;
                case CellKind::RoomFloor: row[x] = '.'; break;
                case CellKind::Doorway: row[x] = '+'; break;
            }
        }
        rows.push_back(std::move(row));
    }
    if (mark_objects)
        for (const ObjectInstance& o : house.objects)
            rows[o.cell.y][o.cell.x] = 'o';
    return rows;
}

}  // namespace houseqa
