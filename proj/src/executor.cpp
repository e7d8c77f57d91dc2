#include "houseqa/executor.hpp"

#include <algorithm>
#include <cstdlib>

namespace houseqa {

namespace {

// Internal control flow only: unwinds to execute(), which reports nullopt.
struct InvalidQuestion {};

struct Ctx {
    const House& house;
    const TrajectoryGroundTruth& gt;
    const Bindings& bindings;
    int count_max;
    std::vector<const ObjectInstance*> seen_objects;
    std::vector<const Room*> seen_rooms;
};

const std::string& resolve_arg(const Ctx& ctx, const Op& op, std::size_t i) {
    const Arg& arg = op.args[i];
    if (arg.kind == Arg::Kind::Literal) return arg.value;
    auto it = ctx.bindings.values.find(arg.value);
    if (it == ctx.bindings.values.end()) {
        throw ExecutionError(std::string(op_kind_name(op.kind)) + ": no binding for key \"" +
                             arg.value + "\"");
    }
    return it->second;
}

const Room* room_of(const Ctx& ctx, const ObjectInstance& obj) {
    const Room* room = ctx.house.find_room(obj.room_id);
    if (!room) {
        throw ExecutionError("object " + obj.id + " references unknown room " + obj.room_id);
    }
    return room;
}

bool matches_spec(const ObjectInstance& obj, const std::string& attr, const std::string& type) {
    return obj.obj_type == type && obj.carries_attr(attr);
}

// Unique seen object matching (attr, type); anything else invalidates the
// question.
const ObjectInstance* resolve_reference(const Ctx& ctx, const std::string& attr,
                                        const std::string& type) {
    const ObjectInstance* found = nullptr;
    for (const ObjectInstance* obj : ctx.seen_objects) {
        if (!matches_spec(*obj, attr, type)) continue;
        if (found) throw InvalidQuestion{};
        found = obj;
    }
    if (!found) throw InvalidQuestion{};
    return found;
}

bool eval_predicate(const Ctx& ctx, const std::string& pred, const std::string& word,
                    const ObjectInstance& obj) {
    if (pred == kPredHasColor) return obj.color == word;
    if (pred == kPredIsType) return obj.obj_type == word;
    if (pred == kPredInRoomType) return room_of(ctx, obj)->room_type == word;
    throw ExecutionError("unknown predicate " + pred);
}

std::string binary(bool v) { return v ? "yes" : "no"; }

std::string count_answer(const Ctx& ctx, std::size_t n) {
    if (n > static_cast<std::size_t>(ctx.count_max)) throw InvalidQuestion{};
    return std::to_string(n);
}

const std::string& member_field(const std::map<std::string, std::string>& member,
                                const char* key) {
    auto it = member.find(key);
    if (it == member.end()) {
        throw ExecutionError(std::string("set member lacks field \"") + key + "\"");
    }
    return it->second;
}

std::size_t count_matching(const Ctx& ctx, const std::string& attr, const std::string& type) {
    std::size_t n = 0;
    for (const ObjectInstance* obj : ctx.seen_objects) {
        if (matches_spec(*obj, attr, type)) ++n;
    }
    return n;
}

bool member_in_room(const Ctx& ctx, const std::map<std::string, std::string>& member,
                    const std::string& room_id) {
    const std::string& attr = member_field(member, "attr");
    const std::string& type = member_field(member, "obj_type");
    for (const ObjectInstance* obj : ctx.seen_objects) {
        if (obj->room_id == room_id && matches_spec(*obj, attr, type)) return true;
    }
    return false;
}

std::string run_set_exist(const Ctx& ctx, const Op& op) {
    if (ctx.bindings.set_members.empty()) throw InvalidQuestion{};
    const std::string& scope = op.args[0].value;
    if (scope == kScopeAnywhere) {
        for (const auto& member : ctx.bindings.set_members) {
            if (count_matching(ctx, member_field(member, "attr"),
                               member_field(member, "obj_type")) == 0) {
                return binary(false);
            }
        }
        return binary(true);
    }
    // Both remaining scopes ask for a single room containing every member.
    for (const Room* room : ctx.seen_rooms) {
        if (scope == kScopeNamedRoom) {
            const Op& o = op;
            if (room->room_type != resolve_arg(ctx, o, 1)) continue;
        }
        bool all = true;
        for (const auto& member : ctx.bindings.set_members) {
            if (!member_in_room(ctx, member, room->id)) {
                all = false;
                break;
            }
        }
        if (all) return binary(true);
    }
    return binary(false);
}

std::string run_compare_size(const Ctx& ctx, const Op& op) {
    const std::string& domain = op.args[0].value;
    const std::string& rel = resolve_arg(ctx, op, 1);
    bool want_bigger;
    if (rel == "bigger") {
        want_bigger = true;
    } else if (rel == "smaller") {
        want_bigger = false;
    } else {
        throw ExecutionError("unknown size relation " + rel);
    }
    double lhs = 0.0;
    double rhs = 0.0;
    if (domain == kDomainObjects) {
        const ObjectInstance* a =
            resolve_reference(ctx, resolve_arg(ctx, op, 2), resolve_arg(ctx, op, 3));
        const ObjectInstance* b =
            resolve_reference(ctx, resolve_arg(ctx, op, 4), resolve_arg(ctx, op, 5));
        if (a == b) throw InvalidQuestion{};
        lhs = a->size;
        rhs = b->size;
    } else {
        auto resolve_room = [&](const std::string& room_type) -> const Room* {
            const Room* found = nullptr;
            for (const Room* room : ctx.seen_rooms) {
                if (room->room_type != room_type) continue;
                if (found) throw InvalidQuestion{};
                found = room;
            }
            if (!found) throw InvalidQuestion{};
            return found;
        };
        const Room* a = resolve_room(resolve_arg(ctx, op, 2));
        const Room* b = resolve_room(resolve_arg(ctx, op, 3));
        if (a == b) throw InvalidQuestion{};
        lhs = a->area_cells();
        rhs = b->area_cells();
    }
    return binary(want_bigger ? lhs > rhs : lhs < rhs);
}

std::string run_compare_count(const Ctx& ctx, const Op& op) {
    const std::string& comp = resolve_arg(ctx, op, 0);
    std::size_t lhs = count_matching(ctx, resolve_arg(ctx, op, 1), resolve_arg(ctx, op, 2));
    std::size_t rhs = count_matching(ctx, resolve_arg(ctx, op, 3), resolve_arg(ctx, op, 4));
    if (comp == "more") return binary(lhs > rhs);
    if (comp == "fewer") return binary(lhs < rhs);
    if (comp == "as many") return binary(lhs == rhs);
    throw ExecutionError("unknown count comparison " + comp);
}

}  // namespace

bool relation_holds(const std::string& rel, const ObjectInstance& subject,
                    const ObjectInstance& reference) {
    int dx = subject.cell.x - reference.cell.x;
    int dy = subject.cell.y - reference.cell.y;
    if (rel == "next to") return std::max(std::abs(dx), std::abs(dy)) <= 1;
    if (rel == "left of") return dx < 0;
    if (rel == "right of") return dx > 0;
    if (rel == "above") return dy < 0;
    if (rel == "below") return dy > 0;
    throw ExecutionError("unknown relation " + rel);
}

std::optional<std::string> execute(const Program& program, const Bindings& bindings,
                                   const House& house, const TrajectoryGroundTruth& gt,
                                   int count_max) {
    type_check(program);
    Ctx ctx{house, gt, bindings, count_max, {}, {}};
    for (const std::string& id : gt.seen_objects) {
        const ObjectInstance* obj = house.find_object(id);
        if (!obj) throw ExecutionError("ground truth references unknown object " + id);
        ctx.seen_objects.push_back(obj);
    }
    for (const std::string& id : gt.seen_rooms) {
        const Room* room = house.find_room(id);
        if (!room) throw ExecutionError("ground truth references unknown room " + id);
        ctx.seen_rooms.push_back(room);
    }

    std::vector<const ObjectInstance*> objs;
    std::vector<const Room*> rooms;
    const ObjectInstance* single = nullptr;
    ValueKind value = ValueKind::Start;
    std::string answer;

    try {
        for (const Op& op : program.ops) {
            switch (op.kind) {
                case OpKind::InputObjects:
                    objs = ctx.seen_objects;
                    value = ValueKind::ObjSet;
                    break;
                case OpKind::InputRooms:
                    rooms = ctx.seen_rooms;
                    value = ValueKind::RoomSet;
                    break;
                case OpKind::FilterType: {
                    const std::string& type = resolve_arg(ctx, op, 0);
                    std::erase_if(objs, [&](const ObjectInstance* o) { return o->obj_type != type; });
                    break;
                }
                case OpKind::FilterAttr: {
                    const std::string& attr = resolve_arg(ctx, op, 0);
                    std::erase_if(objs, [&](const ObjectInstance* o) { return !o->carries_attr(attr); });
                    break;
                }
                case OpKind::FilterRoomType: {
                    const std::string& room_type = resolve_arg(ctx, op, 0);
                    if (value == ValueKind::RoomSet) {
                        std::erase_if(rooms,
                                      [&](const Room* r) { return r->room_type != room_type; });
                    } else {
                        std::erase_if(objs, [&](const ObjectInstance* o) {
                            return room_of(ctx, *o)->room_type != room_type;
                        });
                    }
                    break;
                }
                case OpKind::FilterInRoomOf: {
                    const ObjectInstance* ref =
                        resolve_reference(ctx, resolve_arg(ctx, op, 0), resolve_arg(ctx, op, 1));
                    std::erase_if(objs, [&](const ObjectInstance* o) {
                        return o->room_id != ref->room_id;
                    });
                    break;
                }
                case OpKind::Relate: {
                    const std::string& rel = resolve_arg(ctx, op, 0);
                    const ObjectInstance* ref =
                        resolve_reference(ctx, resolve_arg(ctx, op, 1), resolve_arg(ctx, op, 2));
                    std::erase_if(objs, [&](const ObjectInstance* o) {
                        return o == ref || o->room_id != ref->room_id ||
                               !relation_holds(rel, *o, *ref);
                    });
                    break;
                }
                case OpKind::Unique:
                    if (objs.size() != 1) throw InvalidQuestion{};
                    single = objs.front();
                    value = ValueKind::Obj;
                    break;
                case OpKind::ForAll: {
                    if (objs.empty()) throw InvalidQuestion{};
                    const std::string& pred = op.args[0].value;
                    const std::string& word = resolve_arg(ctx, op, 1);
                    bool all = std::all_of(objs.begin(), objs.end(), [&](const ObjectInstance* o) {
                        return eval_predicate(ctx, pred, word, *o);
                    });
                    answer = binary(all);
                    value = ValueKind::Answer;
                    break;
                }
                case OpKind::Exist:
                    answer = binary(value == ValueKind::RoomSet ? !rooms.empty() : !objs.empty());
                    value = ValueKind::Answer;
                    break;
                case OpKind::Count:
                    answer = count_answer(ctx, objs.size());
                    value = ValueKind::Answer;
                    break;
                case OpKind::CountRoomsWith: {
                    const std::string& attr = resolve_arg(ctx, op, 0);
                    const std::string& type = resolve_arg(ctx, op, 1);
                    std::set<std::string> room_ids;
                    for (const ObjectInstance* obj : ctx.seen_objects) {
                        if (matches_spec(*obj, attr, type)) room_ids.insert(obj->room_id);
                    }
                    answer = count_answer(ctx, room_ids.size());
                    value = ValueKind::Answer;
                    break;
                }
                case OpKind::RefSet: {
                    objs.clear();
                    auto add_ref = [&](const std::string& attr, const std::string& type) {
                        const ObjectInstance* ref = resolve_reference(ctx, attr, type);
                        if (std::find(objs.begin(), objs.end(), ref) != objs.end()) {
                            throw InvalidQuestion{};
                        }
                        objs.push_back(ref);
                    };
                    if (op.args.empty()) {
                        if (ctx.bindings.set_members.empty()) throw InvalidQuestion{};
                        for (const auto& member : ctx.bindings.set_members) {
                            add_ref(member_field(member, "attr"), member_field(member, "obj_type"));
                        }
                    } else {
                        for (std::size_t i = 0; i < op.args.size(); i += 2) {
                            add_ref(resolve_arg(ctx, op, i), resolve_arg(ctx, op, i + 1));
                        }
                    }
                    value = ValueKind::ObjSet;
                    break;
                }
                case OpKind::SameAttr: {
                    const ObjectInstance* a =
                        resolve_reference(ctx, resolve_arg(ctx, op, 1), resolve_arg(ctx, op, 2));
                    const ObjectInstance* b =
                        resolve_reference(ctx, resolve_arg(ctx, op, 3), resolve_arg(ctx, op, 4));
                    if (a == b) throw InvalidQuestion{};
                    const std::string& selector = op.args[0].value;
                    bool same;
                    if (selector == kAttrColor) {
                        same = a->color == b->color;
                    } else if (selector == kAttrObjType) {
                        same = a->obj_type == b->obj_type;
                    } else {
                        same = room_of(ctx, *a)->room_type == room_of(ctx, *b)->room_type;
                    }
                    answer = binary(same);
                    value = ValueKind::Answer;
                    break;
                }
                case OpKind::CompareCount:
                    answer = run_compare_count(ctx, op);
                    value = ValueKind::Answer;
                    break;
                case OpKind::CompareSize:
                    answer = run_compare_size(ctx, op);
                    value = ValueKind::Answer;
                    break;
                case OpKind::SetExist:
                    answer = run_set_exist(ctx, op);
                    value = ValueKind::Answer;
                    break;
                case OpKind::SetExistRooms: {
                    if (ctx.bindings.set_members.empty()) throw InvalidQuestion{};
                    bool all = true;
                    for (const auto& member : ctx.bindings.set_members) {
                        const std::string& room_type = member_field(member, "room_type");
                        bool found = std::any_of(
                            ctx.seen_rooms.begin(), ctx.seen_rooms.end(),
                            [&](const Room* r) { return r->room_type == room_type; });
                        if (!found) {
                            all = false;
                            break;
                        }
                    }
                    answer = binary(all);
                    value = ValueKind::Answer;
                    break;
                }
                case OpKind::TestAttr: {
                    const std::string& pred = op.args[0].value;
                    const std::string& word = resolve_arg(ctx, op, 1);
                    answer = binary(eval_predicate(ctx, pred, word, *single));
                    value = ValueKind::Answer;
                    break;
                }
                case OpKind::GetAttr: {
                    const std::string& selector = op.args[0].value;
                    auto attr_of = [&](const ObjectInstance& o) -> std::string {
                        if (selector == kAttrColor) return o.color;
                        if (selector == kAttrObjType) return o.obj_type;
                        return room_of(ctx, o)->room_type;
                    };
                    if (value == ValueKind::Obj) {
                        answer = attr_of(*single);
                    } else {
                        if (objs.empty()) throw InvalidQuestion{};
                        answer = attr_of(*objs.front());
                        for (const ObjectInstance* o : objs) {
                            if (attr_of(*o) != answer) throw InvalidQuestion{};
                        }
                    }
                    value = ValueKind::Answer;
                    break;
                }
            }
        }
    } catch (const InvalidQuestion&) {
        return std::nullopt;
    }
    return answer;
}

}  // namespace houseqa
