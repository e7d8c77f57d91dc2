#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace houseqa {

enum class TagKind { Attr, ObjType, RoomType, Color, Rel, Comp, CompRel, Art };

const char* tag_kind_name(TagKind k);

struct Tag {
    TagKind kind = TagKind::Attr;
    int ordinal = 0;     // 0 when the slot is unnumbered, else 1 or 2
    bool plural = false; // "-pl" suffix, object types only
    bool in_set = false; // "{}" marker inside a set(...) group

    // Binding key, e.g. "attr1", "obj_type", "room_type2".
    std::string key() const;
    // Token as written in a pattern, e.g. "obj_type1-pl", "attr{}".
    std::string token() const;

    bool operator==(const Tag&) const = default;
};

struct TemplateParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One piece of a parsed pattern: literal text, a tag slot, or a set(...)
// group whose inner pieces repeat once per set member.
struct PatternPiece {
    enum class Type { Literal, Slot, Group };
    Type type = Type::Literal;
    std::string literal;
    Tag tag;
    std::vector<PatternPiece> group;
};

struct TemplatePattern {
    std::string source;  // original text spec
    std::vector<PatternPiece> pieces;

    // All tags in textual order, set-group members flattened once.
    std::vector<Tag> tags() const;
    bool has_set_group() const;
    // Arities a set group may take when instantiated.
    static constexpr int kMinSetArity = 2;
    static constexpr int kMaxSetArity = 3;
};

// Parses the template tag syntax: <name>, <name1>, <name-pl>, <name{}>, and
// set(...) groups. Throws TemplateParseError on malformed tags, unknown tag
// names, or unbalanced set(...).
TemplatePattern parse_template(const std::string& text_spec);

// Inverse of parse_template; parse_template(serialize_pattern(p)) == p.
std::string serialize_pattern(const TemplatePattern& pattern);

}  // namespace houseqa
