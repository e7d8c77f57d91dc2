#include "houseqa/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "houseqa/rng.hpp"
#include "houseqa/synth.hpp"

namespace houseqa {

namespace {

// The oracle deliberately re-derives everything from scratch: its own
// attribute matching, its own relation geometry, its own reference
// resolution. Nothing below calls into the executor.

struct Scene {
    const House& house;
    std::vector<const ObjectInstance*> objs;  // seen objects, id order
    std::vector<const Room*> rooms;           // seen rooms, id order
    int count_max;
};

bool o_has_attr(const ObjectInstance& o, const std::string& a) {
    if (o.color == a) return true;
    for (const auto& extra : o.extra_attrs) {
        if (extra == a) return true;
    }
    return false;
}

bool o_match(const ObjectInstance& o, const std::string& attr, const std::string& type) {
    return o.obj_type == type && o_has_attr(o, attr);
}

std::string o_room_type(const Scene& s, const ObjectInstance& o) {
    const Room* r = s.house.find_room(o.room_id);
    if (!r) throw ExecutionError("oracle: object in unknown room");
    return r->room_type;
}

std::vector<const ObjectInstance*> o_matching(const Scene& s, const std::string& attr,
                                              const std::string& type) {
    std::vector<const ObjectInstance*> out;
    for (const ObjectInstance* o : s.objs) {
        if (o_match(*o, attr, type)) out.push_back(o);
    }
    return out;
}

// nullptr when attr/type does not pin down exactly one seen object.
const ObjectInstance* o_unique(const Scene& s, const std::string& attr, const std::string& type) {
    auto found = o_matching(s, attr, type);
    return found.size() == 1 ? found.front() : nullptr;
}

bool o_rel(const std::string& rel, const ObjectInstance& subj, const ObjectInstance& ref) {
    if (rel == "next to") {
        return std::abs(subj.cell.x - ref.cell.x) <= 1 && std::abs(subj.cell.y - ref.cell.y) <= 1;
    }
    if (rel == "left of") return subj.cell.x < ref.cell.x;
    if (rel == "right of") return subj.cell.x > ref.cell.x;
    if (rel == "above") return subj.cell.y < ref.cell.y;
    if (rel == "below") return subj.cell.y > ref.cell.y;
    throw ExecutionError("oracle: unknown relation " + rel);
}

// Seen objects carrying `attr` that stand in `rel` to the unique reference;
// nullopt (outer) when the reference is ambiguous or missing. Used by the
// templates of the shape "the <attr1> thing <rel> the <attr2> <obj_type2>".
std::optional<std::vector<const ObjectInstance*>> o_related_subjects(
    const Scene& s, const std::string& attr1, const std::string& rel, const std::string& attr2,
    const std::string& type2, const std::string& type1 = "") {
    const ObjectInstance* ref = o_unique(s, attr2, type2);
    if (!ref) return std::nullopt;
    std::vector<const ObjectInstance*> subjects;
    for (const ObjectInstance* o : s.objs) {
        if (o == ref) continue;
        if (!type1.empty() && o->obj_type != type1) continue;
        if (!o_has_attr(*o, attr1)) continue;
        if (o->room_id != ref->room_id) continue;
        if (o_rel(rel, *o, *ref)) subjects.push_back(o);
    }
    return subjects;
}

std::optional<std::string> o_count(const Scene& s, std::size_t n) {
    if (n > static_cast<std::size_t>(s.count_max)) return std::nullopt;
    return std::to_string(n);
}

std::string yn(bool v) { return v ? "yes" : "no"; }

const std::string& want(const Bindings& b, const char* key) {
    auto it = b.values.find(key);
    if (it == b.values.end()) throw ExecutionError(std::string("oracle: missing binding ") + key);
    return it->second;
}

const std::string& member_want(const std::map<std::string, std::string>& m, const char* key) {
    auto it = m.find(key);
    if (it == m.end()) throw ExecutionError(std::string("oracle: missing member field ") + key);
    return it->second;
}

// Resolves every (attr, obj_type) set member to a distinct seen object;
// nullopt on any ambiguity, miss, or coincidence.
std::optional<std::vector<const ObjectInstance*>> o_resolve_members(const Scene& s,
                                                                    const Bindings& b) {
    if (b.set_members.empty()) return std::nullopt;
    std::vector<const ObjectInstance*> out;
    for (const auto& member : b.set_members) {
        const ObjectInstance* o =
            o_unique(s, member_want(member, "attr"), member_want(member, "obj_type"));
        if (!o) return std::nullopt;
        if (std::count(out.begin(), out.end(), o) > 0) return std::nullopt;
        out.push_back(o);
    }
    return out;
}

bool o_member_in_room(const Scene& s, const std::map<std::string, std::string>& member,
                      const std::string& room_id) {
    for (const ObjectInstance* o : s.objs) {
        if (o->room_id == room_id &&
            o_match(*o, member_want(member, "attr"), member_want(member, "obj_type"))) {
            return true;
        }
    }
    return false;
}

std::optional<std::string> answer_by_id(int id, const Scene& s, const Bindings& b) {
    switch (id) {
        case 1: {
            auto set = o_matching(s, want(b, "attr"), want(b, "obj_type"));
            if (set.empty()) return std::nullopt;
            const std::string& color = want(b, "color");
            bool all = std::all_of(set.begin(), set.end(),
                                   [&](const ObjectInstance* o) { return o->color == color; });
            return yn(all);
        }
        case 2: {
            auto set = o_matching(s, want(b, "attr"), want(b, "obj_type"));
            if (set.empty()) return std::nullopt;
            const std::string& rt = want(b, "room_type");
            bool all = std::all_of(set.begin(), set.end(), [&](const ObjectInstance* o) {
                return o_room_type(s, *o) == rt;
            });
            return yn(all);
        }
        case 3: {
            std::vector<const ObjectInstance*> set;
            for (const ObjectInstance* o : s.objs) {
                if (o_has_attr(*o, want(b, "attr"))) set.push_back(o);
            }
            if (set.empty()) return std::nullopt;
            const std::string& type = want(b, "obj_type");
            bool all = std::all_of(set.begin(), set.end(),
                                   [&](const ObjectInstance* o) { return o->obj_type == type; });
            return yn(all);
        }
        case 4:
        case 5: {
            const ObjectInstance* a = o_unique(s, want(b, "attr1"), want(b, "obj_type1"));
            const ObjectInstance* c = o_unique(s, want(b, "attr2"), want(b, "obj_type2"));
            if (!a || !c || a == c) return std::nullopt;
            if (id == 4) {
                const std::string& color = want(b, "color");
                return yn(a->color == color && c->color == color);
            }
            const std::string& rt = want(b, "room_type");
            return yn(o_room_type(s, *a) == rt && o_room_type(s, *c) == rt);
        }
        case 6: {
            const ObjectInstance* a = o_unique(s, want(b, "attr1"), want(b, "obj_type1"));
            const ObjectInstance* c = o_unique(s, want(b, "attr2"), want(b, "obj_type2"));
            if (!a || !c || a == c) return std::nullopt;
            return yn(a->color == c->color);
        }
        case 7: {
            auto subjects = o_related_subjects(s, want(b, "attr1"), want(b, "rel"),
                                               want(b, "attr2"), want(b, "obj_type2"));
            if (!subjects || subjects->size() != 1) return std::nullopt;
            return yn(subjects->front()->obj_type == want(b, "obj_type1"));
        }
        case 8: {
            const ObjectInstance* ref = o_unique(s, want(b, "attr2"), want(b, "obj_type2"));
            if (!ref) return std::nullopt;
            std::size_t n = 0;
            for (const ObjectInstance* o : s.objs) {
                if (o->room_id == ref->room_id &&
                    o_match(*o, want(b, "attr1"), want(b, "obj_type1"))) {
                    ++n;
                }
            }
            return o_count(s, n);
        }
        case 9: {
            std::size_t n = 0;
            for (const ObjectInstance* o : s.objs) {
                if (o_match(*o, want(b, "attr"), want(b, "obj_type")) &&
                    o_room_type(s, *o) == want(b, "room_type")) {
                    ++n;
                }
            }
            return o_count(s, n);
        }
        case 10:
            return o_count(s, o_matching(s, want(b, "attr"), want(b, "obj_type")).size());
        case 11: {
            std::set<std::string> room_ids;
            for (const ObjectInstance* o : s.objs) {
                if (o_match(*o, want(b, "attr"), want(b, "obj_type"))) room_ids.insert(o->room_id);
            }
            return o_count(s, room_ids.size());
        }
        case 12:
        case 13: {
            std::size_t n1 = o_matching(s, want(b, "attr1"), want(b, "obj_type1")).size();
            std::size_t n2 = o_matching(s, want(b, "attr2"), want(b, "obj_type2")).size();
            if (id == 13) return yn(n1 == n2);
            const std::string& comp = want(b, "comp");
            if (comp == "more") return yn(n1 > n2);
            if (comp == "fewer") return yn(n1 < n2);
            throw ExecutionError("oracle: unknown comp " + comp);
        }
        case 14: {
            const ObjectInstance* a = o_unique(s, want(b, "attr1"), want(b, "obj_type"));
            const ObjectInstance* c = o_unique(s, want(b, "attr2"), want(b, "obj_type"));
            if (!a || !c || a == c) return std::nullopt;
            if (want(b, "comp_rel") == "bigger") return yn(a->size > c->size);
            return yn(a->size < c->size);
        }
        case 15: {
            auto unique_room = [&](const std::string& rt) -> const Room* {
                const Room* found = nullptr;
                for (const Room* r : s.rooms) {
                    if (r->room_type != rt) continue;
                    if (found) return nullptr;
                    found = r;
                }
                return found;
            };
            const Room* a = unique_room(want(b, "room_type1"));
            const Room* c = unique_room(want(b, "room_type2"));
            if (!a || !c || a == c) return std::nullopt;
            int area_a = a->bbox.w * a->bbox.h;
            int area_c = c->bbox.w * c->bbox.h;
            if (want(b, "comp_rel") == "bigger") return yn(area_a > area_c);
            return yn(area_a < area_c);
        }
        case 16:
            return yn(!o_matching(s, want(b, "attr"), want(b, "obj_type")).empty());
        case 17: {
            for (const Room* r : s.rooms) {
                if (r->room_type == want(b, "room_type")) return yn(true);
            }
            return yn(false);
        }
        case 18:
        case 19: {
            if (b.set_members.empty()) return std::nullopt;
            for (const Room* r : s.rooms) {
                if (id == 19 && r->room_type != want(b, "room_type")) continue;
                bool all = true;
                for (const auto& member : b.set_members) {
                    if (!o_member_in_room(s, member, r->id)) {
                        all = false;
                        break;
                    }
                }
                if (all) return yn(true);
            }
            return yn(false);
        }
        case 20: {
            if (b.set_members.empty()) return std::nullopt;
            for (const auto& member : b.set_members) {
                if (o_matching(s, member_want(member, "attr"), member_want(member, "obj_type"))
                        .empty()) {
                    return yn(false);
                }
            }
            return yn(true);
        }
        case 21: {
            if (b.set_members.empty()) return std::nullopt;
            for (const auto& member : b.set_members) {
                const std::string& rt = member_want(member, "room_type");
                bool found = std::any_of(s.rooms.begin(), s.rooms.end(),
                                         [&](const Room* r) { return r->room_type == rt; });
                if (!found) return yn(false);
            }
            return yn(true);
        }
        case 22: {
            auto subjects =
                o_related_subjects(s, want(b, "attr1"), want(b, "rel"), want(b, "attr2"),
                                   want(b, "obj_type2"), want(b, "obj_type1"));
            if (!subjects || subjects->size() != 1) return std::nullopt;
            return subjects->front()->color;
        }
        case 23: {
            const ObjectInstance* o = o_unique(s, want(b, "attr"), want(b, "obj_type"));
            if (!o) return std::nullopt;
            return o->color;
        }
        case 24: {
            auto subjects = o_related_subjects(s, want(b, "attr1"), want(b, "rel"),
                                               want(b, "attr2"), want(b, "obj_type2"));
            if (!subjects || subjects->size() != 1) return std::nullopt;
            return subjects->front()->obj_type;
        }
        case 25: {
            std::vector<const ObjectInstance*> set;
            for (const ObjectInstance* o : s.objs) {
                if (o_has_attr(*o, want(b, "attr"))) set.push_back(o);
            }
            if (set.size() != 1) return std::nullopt;
            return set.front()->obj_type;
        }
        case 26: {
            auto members = o_resolve_members(s, b);
            if (!members) return std::nullopt;
            std::string rt = o_room_type(s, *members->front());
            for (const ObjectInstance* o : *members) {
                if (o_room_type(s, *o) != rt) return std::nullopt;
            }
            return rt;
        }
        case 27: {
            auto subjects =
                o_related_subjects(s, want(b, "attr1"), want(b, "rel"), want(b, "attr2"),
                                   want(b, "obj_type2"), want(b, "obj_type1"));
            if (!subjects || subjects->size() != 1) return std::nullopt;
            return o_room_type(s, *subjects->front());
        }
        case 28: {
            const ObjectInstance* o = o_unique(s, want(b, "attr"), want(b, "obj_type"));
            if (!o) return std::nullopt;
            return o_room_type(s, *o);
        }
        default:
            throw std::out_of_range("oracle: no rule for template " + std::to_string(id));
    }
}

// Random-scenario machinery for the agreement check.

struct Scenario {
    House house;
    TrajectoryGroundTruth gt;
};

Scenario random_scenario(const Lexicon& lex, std::uint64_t seed) {
    SynthConfig cfg;
    cfg.grid_width = 16;
    cfg.grid_height = 16;
    cfg.min_rooms = 2;
    cfg.max_rooms = 4;
    cfg.min_objects_per_room = 1;
    cfg.max_objects_per_room = 5;
    cfg.duplicate_prob = 0.5;

    Scenario sc;
    sc.house = synth_house(cfg, lex, derive_seed(seed, {"oracle", "house"}), "oracle-house");
    sc.gt.house_id = sc.house.id;
    sc.gt.video_id = "oracle-video";

    RngStream rng(derive_seed(seed, {"oracle", "gt"}));
    // Seen rooms: nonempty random subset; seen objects: random subset of the
    // objects inside seen rooms, so the real-GT invariant (a seen object's
    // room was seen) holds.
    std::vector<const Room*> rooms;
    for (const Room& r : sc.house.rooms) rooms.push_back(&r);
    rng.shuffle(rooms);
    std::size_t keep = 1 + rng.bounded(rooms.size());
    for (std::size_t i = 0; i < keep; ++i) sc.gt.seen_rooms.insert(rooms[i]->id);
    for (const ObjectInstance& o : sc.house.objects) {
        if (sc.gt.seen_rooms.count(o.room_id) > 0 && rng.bernoulli(0.65)) {
            sc.gt.seen_objects.insert(o.id);
        }
    }
    return sc;
}

// One word per tag kind, mostly attested in the scenario so answerable
// branches get exercised, sometimes arbitrary so misses and Invalids do too.
struct WordPools {
    std::vector<std::string> attested_attrs;
    std::vector<std::string> attested_colors;
    std::vector<std::string> attested_types;
    std::vector<std::string> attested_room_types;
    std::vector<std::string> all_attrs;
    std::vector<std::string> all_colors;
    std::vector<std::string> all_types;
    std::vector<std::string> all_room_types;
};

WordPools build_pools(const Lexicon& lex, const Scenario& sc) {
    WordPools p;
    std::set<std::string> attrs, colors, types, room_types;
    for (const std::string& id : sc.gt.seen_objects) {
        const ObjectInstance* o = sc.house.find_object(id);
        colors.insert(o->color);
        attrs.insert(o->color);
        for (const auto& e : o->extra_attrs) attrs.insert(e);
        types.insert(o->obj_type);
    }
    for (const std::string& id : sc.gt.seen_rooms) {
        room_types.insert(sc.house.find_room(id)->room_type);
    }
    p.attested_attrs.assign(attrs.begin(), attrs.end());
    p.attested_colors.assign(colors.begin(), colors.end());
    p.attested_types.assign(types.begin(), types.end());
    p.attested_room_types.assign(room_types.begin(), room_types.end());
    p.all_colors = lex.colors;
    p.all_attrs = lex.colors;
    p.all_attrs.insert(p.all_attrs.end(), lex.extra_attrs.begin(), lex.extra_attrs.end());
    for (const auto& rec : lex.object_types) p.all_types.push_back(rec.singular);
    p.all_room_types = lex.room_types;
    return p;
}

std::string pick_word(RngStream& rng, const std::vector<std::string>& attested,
                      const std::vector<std::string>& all) {
    if (!attested.empty() && rng.bernoulli(0.75)) return rng.pick(attested);
    return rng.pick(all);
}

Bindings random_bindings(const QuestionTemplate& tmpl, const Lexicon& lex, const WordPools& pools,
                         RngStream& rng) {
    Bindings b;
    bool needs_members = false;
    std::set<std::string> member_keys;
    for (const Tag& tag : tmpl.pattern.tags()) {
        if (tag.kind == TagKind::Art) continue;
        if (tag.in_set) {
            needs_members = true;
            member_keys.insert(tag.key());
            continue;
        }
        if (b.values.count(tag.key()) > 0) continue;
        std::string word;
        switch (tag.kind) {
            case TagKind::Attr:
                word = pick_word(rng, pools.attested_attrs, pools.all_attrs);
                break;
            case TagKind::Color:
                word = pick_word(rng, pools.attested_colors, pools.all_colors);
                break;
            case TagKind::ObjType:
                word = pick_word(rng, pools.attested_types, pools.all_types);
                break;
            case TagKind::RoomType:
                word = pick_word(rng, pools.attested_room_types, pools.all_room_types);
                break;
            case TagKind::Rel:
                word = rng.pick(lex.relations);
                break;
            case TagKind::Comp:
                word = rng.bernoulli(0.5) ? "more" : "fewer";
                break;
            case TagKind::CompRel:
                word = rng.bernoulli(0.5) ? "bigger" : "smaller";
                break;
            case TagKind::Art:
                break;
        }
        b.values[tag.key()] = word;
    }
    if (needs_members) {
        int arity = static_cast<int>(2 + rng.bounded(2));
        for (int i = 0; i < arity; ++i) {
            std::map<std::string, std::string> member;
            for (const std::string& key : member_keys) {
                if (key == "attr") {
                    member[key] = pick_word(rng, pools.attested_attrs, pools.all_attrs);
                } else if (key == "obj_type") {
                    member[key] = pick_word(rng, pools.attested_types, pools.all_types);
                } else {
                    member[key] = pick_word(rng, pools.attested_room_types, pools.all_room_types);
                }
            }
            b.set_members.push_back(std::move(member));
        }
    }
    return b;
}

std::string show(const std::optional<std::string>& a) { return a ? *a : "<invalid>"; }

}  // namespace

std::optional<std::string> oracle_answer(const QuestionTemplate& tmpl, const Bindings& bindings,
                                         const House& house, const TrajectoryGroundTruth& gt,
                                         int count_max) {
    Scene s{house, {}, {}, count_max};
    for (const std::string& id : gt.seen_objects) {
        const ObjectInstance* o = house.find_object(id);
        if (!o) throw ExecutionError("oracle: unknown object " + id);
        s.objs.push_back(o);
    }
    for (const std::string& id : gt.seen_rooms) {
        const Room* r = house.find_room(id);
        if (!r) throw ExecutionError("oracle: unknown room " + id);
        s.rooms.push_back(r);
    }
    return answer_by_id(tmpl.id, s, bindings);
}

AgreementResult run_oracle_agreement(std::uint64_t seed, int scenarios, int count_max) {
    const Lexicon lex = default_lexicon();
    AgreementResult result;
    for (int i = 0; i < scenarios; ++i) {
        std::uint64_t scenario_seed = derive_seed(seed, {"oracle", std::to_string(i)});
        Scenario sc = random_scenario(lex, scenario_seed);
        WordPools pools = build_pools(lex, sc);
        RngStream rng(derive_seed(scenario_seed, {"bindings"}));
        bool scenario_ok = true;
        for (const QuestionTemplate& tmpl : builtin_templates()) {
            Bindings b = random_bindings(tmpl, lex, pools, rng);
            auto got = execute(tmpl.program, b, sc.house, sc.gt, count_max);
            auto expect = oracle_answer(tmpl, b, sc.house, sc.gt, count_max);
            ++result.checks;
            if (got == expect) {
                ++result.checks_agreed;
            } else {
                scenario_ok = false;
                if (result.mismatches.size() < 8) {
                    result.mismatches.push_back(
                        {static_cast<std::uint64_t>(i), tmpl.id,
                         "executor=" + show(got) + " oracle=" + show(expect)});
                }
            }
        }
        ++result.scenarios;
        if (scenario_ok) ++result.scenarios_agreed;
    }
    return result;
}

}  // namespace houseqa
