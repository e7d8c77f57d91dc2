#include "houseqa/templates.hpp"

#include <sstream>
#include <stdexcept>

namespace houseqa {

namespace {

constexpr char kArtSentinel = '\x01';

Arg B(const char* key) { return Arg::binding(key); }
Arg L(const char* v) { return Arg::literal(v); }

Op op(OpKind kind, std::vector<Arg> args = {}) { return Op{kind, std::move(args)}; }

QuestionTemplate make(int id, const char* category, const char* text, Program program,
                      DistinctRule distinct, int quota) {
    QuestionTemplate t;
    t.id = id;
    t.category = category;
    t.text_spec = text;
    t.pattern = parse_template(text);
    t.program = std::move(program);
    t.answer_kind = type_check(t.program);
    t.distinct = distinct;
    t.default_quota = quota;
    return t;
}

std::vector<QuestionTemplate> build_templates() {
    std::vector<QuestionTemplate> ts;
    ts.reserve(28);

    ts.push_back(make(1, kCategoryEqualsAttr, "Are all <attr> <obj_type-pl> <color>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}),
                        op(OpKind::ForAll, {L(kPredHasColor), B("color")})}},
                      DistinctRule::None, 4014));
    ts.push_back(make(2, kCategoryEqualsAttr, "Are all <attr> <obj_type-pl> in the <room_type>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}),
                        op(OpKind::ForAll, {L(kPredInRoomType), B("room_type")})}},
                      DistinctRule::None, 3811));
    ts.push_back(make(3, kCategoryEqualsAttr, "Are all <attr> things <obj_type-pl>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterAttr, {B("attr")}),
                        op(OpKind::ForAll, {L(kPredIsType), B("obj_type")})}},
                      DistinctRule::None, 3539));
    ts.push_back(make(4, kCategoryEqualsAttr,
                      "Are both the <attr1> <obj_type1> and the <attr2> <obj_type2> <color>?",
                      {{op(OpKind::RefSet,
                           {B("attr1"), B("obj_type1"), B("attr2"), B("obj_type2")}),
                        op(OpKind::ForAll, {L(kPredHasColor), B("color")})}},
                      DistinctRule::RefPairs, 3968));
    ts.push_back(
        make(5, kCategoryEqualsAttr,
             "Are both the <attr1> <obj_type1> and the <attr2> <obj_type2> in the <room_type>?",
             {{op(OpKind::RefSet, {B("attr1"), B("obj_type1"), B("attr2"), B("obj_type2")}),
               op(OpKind::ForAll, {L(kPredInRoomType), B("room_type")})}},
             DistinctRule::RefPairs, 3804));
    ts.push_back(make(6, kCategoryEqualsAttr,
                      "Are the <attr1> <obj_type1> and the <attr2> <obj_type2> the same color?",
                      {{op(OpKind::SameAttr, {L(kAttrColor), B("attr1"), B("obj_type1"),
                                              B("attr2"), B("obj_type2")})}},
                      DistinctRule::RefPairs, 4018));
    ts.push_back(make(7, kCategoryEqualsAttr,
                      "Is the <attr1> thing <rel> the <attr2> <obj_type2> <art> <obj_type1>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterAttr, {B("attr1")}),
                        op(OpKind::Relate, {B("rel"), B("attr2"), B("obj_type2")}),
                        op(OpKind::Unique), op(OpKind::TestAttr, {L(kPredIsType), B("obj_type1")})}},
                      DistinctRule::None, 3315));

    ts.push_back(make(
        8, kCategoryCount,
        "How many <attr1> <obj_type1-pl> are in the room containing the <attr2> <obj_type2>?",
        {{op(OpKind::InputObjects), op(OpKind::FilterInRoomOf, {B("attr2"), B("obj_type2")}),
          op(OpKind::FilterType, {B("obj_type1")}), op(OpKind::FilterAttr, {B("attr1")}),
          op(OpKind::Count)}},
        DistinctRule::RefPairs, 3999));
    ts.push_back(make(9, kCategoryCount, "How many <attr> <obj_type-pl> are in the <room_type>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}),
                        op(OpKind::FilterRoomType, {B("room_type")}), op(OpKind::Count)}},
                      DistinctRule::None, 3763));
    ts.push_back(make(10, kCategoryCount, "How many <obj_type-pl> are <attr>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}), op(OpKind::Count)}},
                      DistinctRule::None, 4120));
    ts.push_back(make(11, kCategoryCount, "How many rooms have <attr> <obj_type-pl>?",
                      {{op(OpKind::CountRoomsWith, {B("attr"), B("obj_type")})}},
                      DistinctRule::None, 3834));

    ts.push_back(
        make(12, kCategoryCompareCount,
             "Are there <comp> <attr1> <obj_type1-pl> than <attr2> <obj_type2-pl>?",
             {{op(OpKind::CompareCount,
                  {B("comp"), B("attr1"), B("obj_type1"), B("attr2"), B("obj_type2")})}},
             DistinctRule::RefPairs, 4058));
    ts.push_back(
        make(13, kCategoryCompareCount,
             "Are there as many <attr1> <obj_type1-pl> as there are <attr2> <obj_type2-pl>?",
             {{op(OpKind::CompareCount,
                  {L("as many"), B("attr1"), B("obj_type1"), B("attr2"), B("obj_type2")})}},
             DistinctRule::RefPairs, 4100));

    ts.push_back(make(14, kCategoryCompareSize,
                      "Is the <attr1> <obj_type> <comp_rel> than the <attr2> one?",
                      {{op(OpKind::CompareSize, {L(kDomainObjects), B("comp_rel"), B("attr1"),
                                                 B("obj_type"), B("attr2"), B("obj_type")})}},
                      DistinctRule::Attrs, 3272));
    ts.push_back(make(15, kCategoryCompareSize,
                      "Is the <room_type1> <comp_rel> than the <room_type2>?",
                      {{op(OpKind::CompareSize,
                           {L(kDomainRooms), B("comp_rel"), B("room_type1"), B("room_type2")})}},
                      DistinctRule::RoomTypes, 3148));

    ts.push_back(make(16, kCategoryExist, "Is there <art> <attr> <obj_type>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}), op(OpKind::Exist)}},
                      DistinctRule::None, 4122));
    ts.push_back(make(17, kCategoryExist, "Is there <art> <room_type>?",
                      {{op(OpKind::InputRooms), op(OpKind::FilterRoomType, {B("room_type")}),
                        op(OpKind::Exist)}},
                      DistinctRule::None, 3335));
    ts.push_back(make(18, kCategoryExist,
                      "Is there a room that has set(<art> <attr{}> <obj_type{}>)?",
                      {{op(OpKind::SetExist, {L(kScopeOneRoom)})}}, DistinctRule::None, 3877));
    ts.push_back(make(19, kCategoryExist,
                      "Is there set(<art> <attr{}> <obj_type{}>) in the <room_type>?",
                      {{op(OpKind::SetExist, {L(kScopeNamedRoom), B("room_type")})}},
                      DistinctRule::None, 4025));
    ts.push_back(make(20, kCategoryExist, "Is there set(<art> <attr{}> <obj_type{}>)?",
                      {{op(OpKind::SetExist, {L(kScopeAnywhere)})}}, DistinctRule::None, 4107));
    ts.push_back(make(21, kCategoryExist, "Is there set(<art> <room_type{}>)?",
                      {{op(OpKind::SetExistRooms)}}, DistinctRule::None, 3750));

    ts.push_back(
        make(22, kCategoryQueryColor,
             "What color is the <attr1> <obj_type1> <rel> the <attr2> <obj_type2>?",
             {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type1")}),
               op(OpKind::FilterAttr, {B("attr1")}),
               op(OpKind::Relate, {B("rel"), B("attr2"), B("obj_type2")}), op(OpKind::Unique),
               op(OpKind::GetAttr, {L(kAttrColor)})}},
             DistinctRule::RefPairs, 2178));
    ts.push_back(make(23, kCategoryQueryColor, "What color is the <attr> <obj_type>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}), op(OpKind::Unique),
                        op(OpKind::GetAttr, {L(kAttrColor)})}},
                      DistinctRule::None, 3592));

    ts.push_back(make(24, kCategoryQueryObjType,
                      "What is the <attr1> thing <rel> the <attr2> <obj_type2>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterAttr, {B("attr1")}),
                        op(OpKind::Relate, {B("rel"), B("attr2"), B("obj_type2")}),
                        op(OpKind::Unique), op(OpKind::GetAttr, {L(kAttrObjType)})}},
                      DistinctRule::None, 3119));
    ts.push_back(make(25, kCategoryQueryObjType, "What is the <attr> thing?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterAttr, {B("attr")}),
                        op(OpKind::Unique), op(OpKind::GetAttr, {L(kAttrObjType)})}},
                      DistinctRule::None, 2883));

    ts.push_back(make(26, kCategoryQueryRoomLocation, "Where are the set(<attr{}> <obj_type{}>)?",
                      {{op(OpKind::RefSet), op(OpKind::GetAttr, {L(kAttrRoomType)})}},
                      DistinctRule::None, 3816));
    ts.push_back(
        make(27, kCategoryQueryRoomLocation,
             "Where is the <attr1> <obj_type1> <rel> the <attr2> <obj_type2>?",
             {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type1")}),
               op(OpKind::FilterAttr, {B("attr1")}),
               op(OpKind::Relate, {B("rel"), B("attr2"), B("obj_type2")}), op(OpKind::Unique),
               op(OpKind::GetAttr, {L(kAttrRoomType)})}},
             DistinctRule::RefPairs, 2284));
    ts.push_back(make(28, kCategoryQueryRoomLocation, "Where is the <attr> <obj_type>?",
                      {{op(OpKind::InputObjects), op(OpKind::FilterType, {B("obj_type")}),
                        op(OpKind::FilterAttr, {B("attr")}), op(OpKind::Unique),
                        op(OpKind::GetAttr, {L(kAttrRoomType)})}},
                      DistinctRule::None, 3481));
    return ts;
}

const std::string& lookup_binding(const Bindings& bindings, const std::string& key) {
    auto it = bindings.values.find(key);
    if (it == bindings.values.end()) {
        throw ExecutionError("realization: no binding for key \"" + key + "\"");
    }
    return it->second;
}

void realize_pieces(const std::vector<PatternPiece>& pieces, const Bindings& bindings,
                    const Lexicon& lexicon, const std::map<std::string, std::string>* member,
                    std::string& out) {
    for (const auto& piece : pieces) {
        switch (piece.type) {
            case PatternPiece::Type::Literal:
                out += piece.literal;
                break;
            case PatternPiece::Type::Slot: {
                const Tag& tag = piece.tag;
                if (tag.kind == TagKind::Art) {
                    out += kArtSentinel;
                    break;
                }
                const std::string* word;
                if (tag.in_set) {
                    if (!member) throw ExecutionError("set tag realized outside a member");
                    auto it = member->find(tag.key());
                    if (it == member->end()) {
                        throw ExecutionError("set member lacks field \"" + tag.key() + "\"");
                    }
                    word = &it->second;
                } else {
                    word = &lookup_binding(bindings, tag.key());
                }
                out += tag.plural ? lexicon.plural_of(*word) : *word;
                break;
            }
            case PatternPiece::Type::Group: {
                if (bindings.set_members.empty()) {
                    throw ExecutionError("realization: pattern has a set group but no members");
                }
                for (std::size_t i = 0; i < bindings.set_members.size(); ++i) {
                    if (i > 0) out += " and ";
                    realize_pieces(piece.group, bindings, lexicon, &bindings.set_members[i], out);
                }
                break;
            }
        }
    }
}

bool vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
        case 'A': case 'E': case 'I': case 'O': case 'U':
            return true;
        default:
            return false;
    }
}

std::string resolve_articles(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 8);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != kArtSentinel) {
            out += text[i];
            continue;
        }
        std::size_t j = i + 1;
        while (j < text.size() && text[j] == ' ') ++j;
        out += (j < text.size() && vowel(text[j])) ? "an" : "a";
    }
    return out;
}

}  // namespace

const std::vector<QuestionTemplate>& builtin_templates() {
    static const std::vector<QuestionTemplate> templates = build_templates();
    return templates;
}

const QuestionTemplate& template_by_id(int id) {
    const auto& ts = builtin_templates();
    if (id < 1 || static_cast<std::size_t>(id) > ts.size()) {
        throw std::out_of_range("no template with id " + std::to_string(id));
    }
    const QuestionTemplate& t = ts[static_cast<std::size_t>(id) - 1];
    if (t.id != id) throw std::out_of_range("template table out of order");
    return t;
}

bool category_is_binary(const std::string& category) {
    return category == kCategoryEqualsAttr || category == kCategoryCompareCount ||
           category == kCategoryCompareSize || category == kCategoryExist;
}

std::string realize_text(const QuestionTemplate& tmpl, const Bindings& bindings,
                         const Lexicon& lexicon) {
    std::string raw;
    realize_pieces(tmpl.pattern.pieces, bindings, lexicon, nullptr, raw);
    return resolve_articles(raw);
}

int token_count(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    int n = 0;
    while (in >> word) ++n;
    return n;
}

}  // namespace houseqa
