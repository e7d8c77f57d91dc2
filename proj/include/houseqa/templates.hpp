#pragma once

#include <string>
#include <vector>

#include "houseqa/executor.hpp"
#include "houseqa/lexicon.hpp"
#include "houseqa/program.hpp"
#include "houseqa/tags.hpp"

namespace houseqa {

// Instantiation-time distinctness requirements between a template's slots.
enum class DistinctRule {
    None,
    RefPairs,   // (attr1, obj_type1) != (attr2, obj_type2)
    Attrs,      // attr1 != attr2
    RoomTypes,  // room_type1 != room_type2
};

struct QuestionTemplate {
    int id = 0;                // stable 1-based id
    std::string category;      // e.g. "equals_attr", "count"
    std::string text_spec;     // pattern with tag slots
    TemplatePattern pattern;
    Program program;
    AnswerKind answer_kind = AnswerKind::Binary;
    DistinctRule distinct = DistinctRule::None;
    int default_quota = 0;     // relative sampling weight
};

// The full template inventory, parsed and type-checked once. Ordered by id.
const std::vector<QuestionTemplate>& builtin_templates();

// Throws std::out_of_range for ids outside the inventory.
const QuestionTemplate& template_by_id(int id);

inline constexpr const char* kCategoryEqualsAttr = "equals_attr";
inline constexpr const char* kCategoryCount = "count";
inline constexpr const char* kCategoryCompareCount = "compare_count";
inline constexpr const char* kCategoryCompareSize = "compare_size";
inline constexpr const char* kCategoryExist = "exist";
inline constexpr const char* kCategoryQueryColor = "query_color";
inline constexpr const char* kCategoryQueryObjType = "query_obj_type";
inline constexpr const char* kCategoryQueryRoomLocation = "query_room_location";

bool category_is_binary(const std::string& category);

// Substitutes bindings into the pattern: fills slots, pluralizes marked
// object types, expands the set group once per member joined by " and ",
// and resolves <art> to a/an against the following word. Throws
// ExecutionError when a binding the pattern needs is missing.
std::string realize_text(const QuestionTemplate& tmpl, const Bindings& bindings,
                         const Lexicon& lexicon);

// Whitespace-separated word count; trailing punctuation does not add words.
int token_count(const std::string& text);

}  // namespace houseqa
