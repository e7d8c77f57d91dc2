#include "houseqa/tags.hpp"

#include <array>
#include <cstddef>
#include <optional>

namespace houseqa {

namespace {

struct KindName {
    TagKind kind;
    const char* name;
};

// Longest-match order: obj_type before color etc. does not matter here since
// names are matched exactly against the token body, not by prefix.
constexpr std::array<KindName, 8> kKindNames = {{
    {TagKind::Attr, "attr"},
    {TagKind::ObjType, "obj_type"},
    {TagKind::RoomType, "room_type"},
    {TagKind::Color, "color"},
    {TagKind::Rel, "rel"},
    {TagKind::Comp, "comp"},
    {TagKind::CompRel, "comp_rel"},
    {TagKind::Art, "art"},
}};

std::optional<TagKind> kind_from_name(const std::string& name) {
    for (const auto& kn : kKindNames) {
        if (name == kn.name) return kn.kind;
    }
    return std::nullopt;
}

[[noreturn]] void fail(const std::string& text_spec, std::size_t pos, const std::string& what) {
    throw TemplateParseError("template parse error at offset " + std::to_string(pos) + ": " +
                             what + " in \"" + text_spec + "\"");
}

// Parses the body between '<' and '>'. Grammar:
//   name [digit] ["-pl"] ["{}"]
Tag parse_tag_body(const std::string& text_spec, std::size_t pos, std::string body) {
    Tag tag;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "{}") == 0) {
        tag.in_set = true;
        body.erase(body.size() - 2);
    }
    if (body.size() >= 3 && body.compare(body.size() - 3, 3, "-pl") == 0) {
        tag.plural = true;
        body.erase(body.size() - 3);
    }
    if (!body.empty() && body.back() >= '0' && body.back() <= '9') {
        tag.ordinal = body.back() - '0';
        body.pop_back();
        if (tag.ordinal < 1 || tag.ordinal > 2) {
            fail(text_spec, pos, "tag ordinal out of range");
        }
    }
    auto kind = kind_from_name(body);
    if (!kind) fail(text_spec, pos, "unknown tag name \"" + body + "\"");
    tag.kind = *kind;
    if (tag.plural && tag.kind != TagKind::ObjType) {
        fail(text_spec, pos, "-pl is only valid on obj_type");
    }
    if (tag.kind == TagKind::Art && (tag.ordinal != 0 || tag.in_set)) {
        fail(text_spec, pos, "art takes no ordinal or set marker");
    }
    return tag;
}

// Parses pieces until `stop` (or end of input when stop == '\0'). Returns the
// index one past the consumed region.
std::size_t parse_pieces(const std::string& s, std::size_t begin, char stop, bool inside_group,
                         std::vector<PatternPiece>& out) {
    std::string literal;
    auto flush = [&] {
        if (!literal.empty()) {
            PatternPiece piece;
            piece.type = PatternPiece::Type::Literal;
            piece.literal = std::move(literal);
            out.push_back(std::move(piece));
            literal.clear();
        }
    };
    std::size_t i = begin;
    while (i < s.size()) {
        if (stop != '\0' && s[i] == stop) {
            flush();
            return i + 1;
        }
        if (s[i] == '<') {
            auto close = s.find('>', i + 1);
            if (close == std::string::npos) fail(s, i, "unterminated tag");
            flush();
            PatternPiece piece;
            piece.type = PatternPiece::Type::Slot;
            piece.tag = parse_tag_body(s, i, s.substr(i + 1, close - i - 1));
            if (piece.tag.in_set && !inside_group) {
                fail(s, i, "set-marked tag outside set(...)");
            }
            out.push_back(std::move(piece));
            i = close + 1;
            continue;
        }
        if (s[i] == '>') fail(s, i, "stray '>'");
        if (!inside_group && s.compare(i, 4, "set(") == 0) {
            flush();
            PatternPiece piece;
            piece.type = PatternPiece::Type::Group;
            std::size_t after = parse_pieces(s, i + 4, ')', true, piece.group);
            bool any_set_tag = false;
            for (const auto& inner : piece.group) {
                if (inner.type == PatternPiece::Type::Slot && inner.tag.in_set) any_set_tag = true;
            }
            if (!any_set_tag) fail(s, i, "set(...) contains no set-marked tag");
            out.push_back(std::move(piece));
            i = after;
            continue;
        }
        if (inside_group && s.compare(i, 4, "set(") == 0) {
            fail(s, i, "nested set(...)");
        }
        literal.push_back(s[i]);
        ++i;
    }
    if (stop != '\0') fail(s, s.size(), "unbalanced set(...)");
    flush();
    return i;
}

void serialize_pieces(const std::vector<PatternPiece>& pieces, std::string& out) {
    for (const auto& piece : pieces) {
        switch (piece.type) {
            case PatternPiece::Type::Literal:
                out += piece.literal;
                break;
            case PatternPiece::Type::Slot:
                out += '<';
                out += piece.tag.token();
                out += '>';
                break;
            case PatternPiece::Type::Group:
                out += "set(";
                serialize_pieces(piece.group, out);
                out += ')';
                break;
        }
    }
}

void collect_tags(const std::vector<PatternPiece>& pieces, std::vector<Tag>& out) {
    for (const auto& piece : pieces) {
        switch (piece.type) {
            case PatternPiece::Type::Literal:
                break;
            case PatternPiece::Type::Slot:
                out.push_back(piece.tag);
                break;
            case PatternPiece::Type::Group:
                collect_tags(piece.group, out);
                break;
        }
    }
}

}  // namespace

const char* tag_kind_name(TagKind k) {
    for (const auto& kn : kKindNames) {
        if (kn.kind == k) return kn.name;
    }
    return "?";
}

std::string Tag::key() const {
    std::string s = tag_kind_name(kind);
    if (ordinal > 0) s += static_cast<char>('0' + ordinal);
    return s;
}

std::string Tag::token() const {
    std::string s = key();
    if (plural) s += "-pl";
    if (in_set) s += "{}";
    return s;
}

std::vector<Tag> TemplatePattern::tags() const {
    std::vector<Tag> out;
    collect_tags(pieces, out);
    return out;
}

bool TemplatePattern::has_set_group() const {
    for (const auto& piece : pieces) {
        if (piece.type == PatternPiece::Type::Group) return true;
    }
    return false;
}

TemplatePattern parse_template(const std::string& text_spec) {
    TemplatePattern pattern;
    pattern.source = text_spec;
    parse_pieces(text_spec, 0, '\0', false, pattern.pieces);
    return pattern;
}

std::string serialize_pattern(const TemplatePattern& pattern) {
    std::string out;
    serialize_pieces(pattern.pieces, out);
    return out;
}

}  // namespace houseqa
