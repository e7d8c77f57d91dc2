#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace houseqa {

// Functional programs are linear op pipelines. Each op consumes the value
// produced by the previous one; the first op consumes Start and the last
// must produce an answer.
enum class OpKind {
    InputObjects,   // Start -> ObjSet: every object seen in the video
    InputRooms,     // Start -> RoomSet: every room seen in the video
    FilterType,     // ObjSet -> ObjSet: keep objects of a type
    FilterAttr,     // ObjSet -> ObjSet: keep objects carrying an attribute
    FilterRoomType, // ObjSet|RoomSet -> same: keep by room type
    FilterInRoomOf, // ObjSet -> ObjSet: keep objects in the reference's room
    Relate,         // ObjSet -> ObjSet: keep objects related to the reference
    Unique,         // ObjSet -> Obj: sole element, Invalid otherwise
    ForAll,         // ObjSet -> binary: predicate holds for every element
    Exist,          // ObjSet|RoomSet -> binary: nonempty
    Count,          // ObjSet -> count answer
    CountRoomsWith, // Start -> count of rooms containing a matching object
    RefSet,         // Start -> ObjSet: resolve each set member to one object
    SameAttr,       // Start -> binary: two references agree on an attribute
    CompareCount,   // Start -> binary: compare two reference-set sizes
    CompareSize,    // Start -> binary: compare sizes of two objects or rooms
    SetExist,       // Start -> binary: all set members exist under a scope
    SetExistRooms,  // Start -> binary: all member room types were seen
    TestAttr,       // Obj -> binary: predicate on a single object
    GetAttr,        // Obj|ObjSet -> name answer (set members must agree)
};

const char* op_kind_name(OpKind k);

// An op argument is either a literal word or a key into the instance
// bindings (e.g. "attr1" resolved to "red" at execution time).
struct Arg {
    enum class Kind { Literal, Binding };
    Kind kind = Kind::Literal;
    std::string value;

    static Arg literal(std::string v) { return {Kind::Literal, std::move(v)}; }
    static Arg binding(std::string key) { return {Kind::Binding, std::move(key)}; }
    bool operator==(const Arg&) const = default;
};

struct Op {
    OpKind kind;
    std::vector<Arg> args;
    bool operator==(const Op&) const = default;
};

struct Program {
    std::vector<Op> ops;
    bool operator==(const Program&) const = default;
};

// Predicate names used by ForAll/TestAttr args[0].
inline constexpr const char* kPredHasColor = "has_color";
inline constexpr const char* kPredInRoomType = "in_room_type";
inline constexpr const char* kPredIsType = "is_type";

// GetAttr / SameAttr attribute selectors.
inline constexpr const char* kAttrColor = "color";
inline constexpr const char* kAttrObjType = "obj_type";
inline constexpr const char* kAttrRoomType = "room_type";

// CompareSize domains.
inline constexpr const char* kDomainObjects = "objects";
inline constexpr const char* kDomainRooms = "rooms";

// SetExist scopes.
inline constexpr const char* kScopeAnywhere = "anywhere";
inline constexpr const char* kScopeOneRoom = "one_room";
inline constexpr const char* kScopeNamedRoom = "named_room";

enum class ValueKind { Start, ObjSet, RoomSet, Obj, Answer };

enum class AnswerKind { Binary, Count, Color, ObjTypeName, RoomTypeName };

const char* answer_kind_name(AnswerKind k);

struct ProgramTypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validates the pipeline's op arities, argument selectors, and value-kind
// transitions. Throws ProgramTypeError on any violation; otherwise returns
// the kind of answer the program produces.
AnswerKind type_check(const Program& program);

// Compact one-line rendering, e.g. "FilterType($obj_type) | Count", used in
// debug output and tests.
std::string program_signature(const Program& program);

}  // namespace houseqa
