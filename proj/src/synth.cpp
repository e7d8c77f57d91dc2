#include "houseqa/synth.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

#include "houseqa/rng.hpp"

namespace houseqa {

std::vector<std::string> validate_synth_config(const SynthConfig& cfg) {
    std::vector<std::string> problems;
    if (cfg.min_rooms < 1 || cfg.min_rooms > cfg.max_rooms)
        problems.push_back("room-count range empty");
    if (cfg.min_objects_per_room < 0 || cfg.min_objects_per_room > cfg.max_objects_per_room)
        problems.push_back("objects-per-room range empty");
    if (cfg.min_room_size < 1) problems.push_back("min_room_size must be >= 1");
    if (cfg.extra_attr_prob < 0 || cfg.extra_attr_prob > 1)
        problems.push_back("extra_attr_prob out of [0,1]");
    if (cfg.extra_doorway_prob < 0 || cfg.extra_doorway_prob > 1)
        problems.push_back("extra_doorway_prob out of [0,1]");
    if (cfg.duplicate_prob < 0 || cfg.duplicate_prob > 1)
        problems.push_back("duplicate_prob out of [0,1]");
    // Tiling bound: k rooms per row need k*s + (k-1) interior walls plus the
    // outer ring, i.e. k <= (W-1)/(s+1).
    int per_row = (cfg.grid_width - 1) / (cfg.min_room_size + 1);
    int per_col = (cfg.grid_height - 1) / (cfg.min_room_size + 1);
    if (per_row < 1 || per_col < 1 || per_row * per_col < cfg.max_rooms)
        problems.push_back("grid too small for max_rooms at min_room_size");
    return problems;
}

namespace {

struct Leaf {
    Rect rect;
};

// Splits leaves until `target` rooms exist. Largest-area leaf first with
// index tie-break, split axis and position drawn from the stream. Returns
// nullopt when no leaf can be split further.
std::optional<std::vector<Rect>> partition_rooms(Rect interior, int target, int min_size,
                                                 RngStream& rng) {
    std::vector<Rect> leaves{interior};
    while (static_cast<int>(leaves.size()) < target) {
        int best = -1;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const Rect& r = leaves[i];
            bool splittable = r.w >= 2 * min_size + 1 || r.h >= 2 * min_size + 1;
            if (!splittable) continue;
            if (best < 0 || r.area() > leaves[best].area()) best = static_cast<int>(i);
        }
        if (best < 0) return std::nullopt;
        Rect r = leaves[best];
        bool can_v = r.w >= 2 * min_size + 1;
        bool can_h = r.h >= 2 * min_size + 1;
        bool vertical = can_v && can_h ? rng.bernoulli(0.5) : can_v;
        if (vertical) {
            int c = static_cast<int>(rng.uniform_int(r.x + min_size, r.x + r.w - 1 - min_size));
            Rect left{r.x, r.y, c - r.x, r.h};
            Rect right{c + 1, r.y, r.x + r.w - c - 1, r.h};
            leaves[best] = left;
            leaves.push_back(right);
        } else {
            int c = static_cast<int>(rng.uniform_int(r.y + min_size, r.y + r.h - 1 - min_size));
            Rect top{r.x, r.y, r.w, c - r.y};
            Rect bottom{r.x, c + 1, r.w, r.y + r.h - c - 1};
            leaves[best] = top;
            leaves.push_back(bottom);
        }
    }
    return leaves;
}

struct AdjEdge {
    int a = 0;
    int b = 0;
    std::vector<Cell> band;  // candidate doorway cells
};

std::vector<AdjEdge> adjacency_edges(const std::vector<Rect>& rooms) {
    std::vector<AdjEdge> edges;
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        for (std::size_t j = i + 1; j < rooms.size(); ++j) {
            const Rect& a = rooms[i];
            const Rect& b = rooms[j];
            AdjEdge e{static_cast<int>(i), static_cast<int>(j), {}};
            if (a.x + a.w + 1 == b.x || b.x + b.w + 1 == a.x) {
                int band_x = a.x + a.w + 1 == b.x ? a.x + a.w : b.x + b.w;
                int lo = std::max(a.y, b.y);
                int hi = std::min(a.y + a.h, b.y + b.h);
                for (int y = lo; y < hi; ++y) e.band.push_back({band_x, y});
            } else if (a.y + a.h + 1 == b.y || b.y + b.h + 1 == a.y) {
                int band_y = a.y + a.h + 1 == b.y ? a.y + a.h : b.y + b.h;
                int lo = std::max(a.x, b.x);
                int hi = std::min(a.x + a.w, b.x + b.w);
                for (int x = lo; x < hi; ++x) e.band.push_back({x, band_y});
            }
            if (!e.band.empty()) edges.push_back(std::move(e));
        }
    }
    return edges;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

House synth_house(const SynthConfig& cfg, const Lexicon& lex, std::uint64_t seed,
                  const std::string& house_id) {
    constexpr int kLayoutAttempts = 50;
    RngStream layout_rng(derive_seed(seed, {"layout"}));

    std::vector<Rect> room_rects;
    std::vector<AdjEdge> edges;
    std::vector<int> tree_edges;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= kLayoutAttempts)
            throw SynthError("synth_house: layout placement failed after " +
                             std::to_string(kLayoutAttempts) + " attempts (config too tight)");
        int target = static_cast<int>(layout_rng.uniform_int(cfg.min_rooms, cfg.max_rooms));
        Rect interior{1, 1, cfg.grid_width - 2, cfg.grid_height - 2};
        if (interior.w < cfg.min_room_size || interior.h < cfg.min_room_size) continue;
        auto rooms = partition_rooms(interior, target, cfg.min_room_size, layout_rng);
        if (!rooms) continue;
        auto adj = adjacency_edges(*rooms);
        // Spanning tree over the adjacency graph; BSP leaves are always
        // connected through their split bands, but verify anyway.
        std::vector<int> order(adj.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        layout_rng.shuffle(order);
        UnionFind uf(static_cast<int>(rooms->size()));
        std::vector<int> tree;
        for (int idx : order)
            if (uf.unite(adj[static_cast<std::size_t>(idx)].a,
                         adj[static_cast<std::size_t>(idx)].b))
                tree.push_back(idx);
        if (tree.size() + 1 != rooms->size()) continue;
        room_rects = std::move(*rooms);
        edges = std::move(adj);
        tree_edges = std::move(tree);
        break;
    }

    House house;
    house.id = house_id;
    house.width = cfg.grid_width;
    house.height = cfg.grid_height;
    house.cells.assign(static_cast<std::size_t>(cfg.grid_width) * cfg.grid_height,
                       CellKind::Wall);

    for (std::size_t i = 0; i < room_rects.size(); ++i) {
        Room room;
        room.id = "r" + std::to_string(i);
        room.room_type = lex.room_types[layout_rng.bounded(lex.room_types.size())];
        room.bbox = room_rects[i];
        for (int y = room.bbox.y; y < room.bbox.y + room.bbox.h; ++y)
            for (int x = room.bbox.x; x < room.bbox.x + room.bbox.w; ++x)
                house.set_cell({x, y}, CellKind::RoomFloor);
        house.rooms.push_back(std::move(room));
    }

    std::set<int> tree_set(tree_edges.begin(), tree_edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        bool carve = tree_set.count(static_cast<int>(i)) > 0 ||
                     layout_rng.bernoulli(cfg.extra_doorway_prob);
        if (!carve) continue;
        const AdjEdge& e = edges[i];
        Cell c = e.band[layout_rng.bounded(e.band.size())];
        house.set_cell(c, CellKind::Doorway);
        house.doorways.push_back({house.rooms[e.a].id, house.rooms[e.b].id, c});
    }

    RngStream obj_rng(derive_seed(seed, {"objects"}));
    int next_obj = 0;
    for (const Room& room : house.rooms) {
        int want = static_cast<int>(
            obj_rng.uniform_int(cfg.min_objects_per_room, cfg.max_objects_per_room));
        want = std::min(want, room.area_cells());
        std::vector<Cell> free_cells;
        for (int y = room.bbox.y; y < room.bbox.y + room.bbox.h; ++y)
            for (int x = room.bbox.x; x < room.bbox.x + room.bbox.w; ++x)
                free_cells.push_back({x, y});
        obj_rng.shuffle(free_cells);
        for (int k = 0; k < want; ++k) {
            ObjectInstance obj;
            obj.id = "o" + std::to_string(next_obj++);
            obj.obj_type = lex.object_types[obj_rng.bounded(lex.object_types.size())].singular;
            obj.color = lex.colors[obj_rng.bounded(lex.colors.size())];
            for (const std::string& a : lex.extra_attrs)
                if (obj_rng.bernoulli(cfg.extra_attr_prob)) obj.extra_attrs.insert(a);
            obj.cell = free_cells[static_cast<std::size_t>(k)];
            obj.size = 0.2 + obj_rng.uniform_real() * 2.8;
            obj.room_id = room.id;
            house.objects.push_back(std::move(obj));
        }
    }

    // Duplicate injection: clone an existing object's (type, color, extras)
    // onto a free cell of its room, so unique()-failing instantiations occur
    // downstream and rejection paths get exercised.
    if (!house.objects.empty() && obj_rng.bernoulli(cfg.duplicate_prob)) {
        const ObjectInstance& source =
            house.objects[obj_rng.bounded(house.objects.size())];
        const Room* room = house.find_room(source.room_id);
        std::set<Cell> occupied;
        for (const ObjectInstance& o : house.objects) occupied.insert(o.cell);
        std::vector<Cell> free_cells;
        for (int y = room->bbox.y; y < room->bbox.y + room->bbox.h; ++y)
            for (int x = room->bbox.x; x < room->bbox.x + room->bbox.w; ++x)
                if (!occupied.count({x, y})) free_cells.push_back({x, y});
        if (!free_cells.empty()) {
            ObjectInstance dup;
            dup.id = "o" + std::to_string(next_obj++);
            dup.obj_type = source.obj_type;
            dup.color = source.color;
            dup.extra_attrs = source.extra_attrs;
            dup.cell = free_cells[obj_rng.bounded(free_cells.size())];
            dup.size = 0.2 + obj_rng.uniform_real() * 2.8;
            dup.room_id = source.room_id;
            house.objects.push_back(std::move(dup));
        }
    }

    assert(validate_house(house).empty());
    return house;
}

}  // namespace houseqa
