#pragma once

#include <string>
#include <vector>

namespace houseqa {

struct NounRecord {
    std::string singular;
    std::string plural;
};

// Vocabulary for environments, questions and answers. The answer vocabulary
// is derived: binary answers + count answers + colors + room types + object
// types. The default lexicon is sized so that this union has exactly 70
// entries.
struct Lexicon {
    std::vector<NounRecord> object_types;
    std::vector<std::string> room_types;
    std::vector<std::string> colors;
    std::vector<std::string> extra_attrs;  // non-color attributes
    std::vector<std::string> relations;
    int count_min = 0;
    int count_max = 5;
    std::pair<std::string, std::string> binary_answers = {"yes", "no"};

    bool has_object_type(const std::string& name) const;
    bool has_room_type(const std::string& name) const;
    bool has_color(const std::string& name) const;
    bool has_extra_attr(const std::string& name) const;
    bool has_relation(const std::string& name) const;

    // Plural form for an object type; throws if the type is unknown.
    const std::string& plural_of(const std::string& singular) const;

    // Full answer vocabulary in a fixed order:
    // binary, counts, colors, room types, object types (singular forms).
    std::vector<std::string> answer_vocabulary() const;
};

// Structural problems found in a lexicon; empty means valid.
std::vector<std::string> validate_lexicon(const Lexicon& lex);

// Built-in lexicon: 2 binary + 6 counts + 8 colors + 10 room types +
// 44 object types = 70 answers.
Lexicon default_lexicon();

}  // namespace houseqa
