#include "houseqa/lexicon.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace houseqa {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

bool Lexicon::has_object_type(const std::string& name) const {
    return std::any_of(object_types.begin(), object_types.end(),
                       [&](const NounRecord& n) { return n.singular == name; });
}

bool Lexicon::has_room_type(const std::string& name) const {
    return contains(room_types, name);
}

bool Lexicon::has_color(const std::string& name) const {
    return contains(colors, name);
}

bool Lexicon::has_extra_attr(const std::string& name) const {
    return contains(extra_attrs, name);
}

bool Lexicon::has_relation(const std::string& name) const {
    return contains(relations, name);
}

const std::string& Lexicon::plural_of(const std::string& singular) const {
    for (const NounRecord& n : object_types) {
        if (n.singular == singular) {
            if (n.plural.empty())
                throw std::runtime_error("lexicon: missing plural for '" + singular + "'");
            return n.plural;
        }
    }
    throw std::runtime_error("lexicon: unknown object type '" + singular + "'");
}

std::vector<std::string> Lexicon::answer_vocabulary() const {
    std::vector<std::string> out;
    out.push_back(binary_answers.first);
    out.push_back(binary_answers.second);
    for (int c = count_min; c <= count_max; ++c) out.push_back(std::to_string(c));
    for (const auto& c : colors) out.push_back(c);
    for (const auto& r : room_types) out.push_back(r);
    for (const auto& o : object_types) out.push_back(o.singular);
    return out;
}

std::vector<std::string> validate_lexicon(const Lexicon& lex) {
    std::vector<std::string> problems;
    std::set<std::string> seen;
    auto check_unique = [&](const std::string& name, const char* category) {
        if (!seen.insert(name).second)
            problems.push_back(std::string("duplicate name '") + name + "' (" + category + ")");
    };
    for (const auto& n : lex.object_types) {
        check_unique(n.singular, "object_types");
        if (n.plural.empty())
            problems.push_back("object type '" + n.singular + "' has no plural form");
    }
    for (const auto& r : lex.room_types) check_unique(r, "room_types");
    for (const auto& c : lex.colors) check_unique(c, "colors");
    for (const auto& a : lex.extra_attrs) check_unique(a, "extra_attrs");
    for (const auto& r : lex.relations) check_unique(r, "relations");
    if (lex.count_min > lex.count_max) problems.push_back("empty count answer range");
    if (lex.binary_answers.first == lex.binary_answers.second)
        problems.push_back("binary answers must differ");
    if (lex.object_types.empty()) problems.push_back("no object types");
    if (lex.room_types.empty()) problems.push_back("no room types");
    if (lex.colors.empty()) problems.push_back("no colors");
    return problems;
}

Lexicon default_lexicon() {
    Lexicon lex;
    lex.colors = {"red", "blue", "green", "yellow", "brown", "gray", "purple", "orange"};
    lex.room_types = {"kitchen",     "living room", "bedroom", "bathroom", "dining room",
                      "office",      "hallway",     "garage",  "balcony",  "laundry room"};
    lex.extra_attrs = {"small", "large"};
    lex.relations = {"next to", "left of", "right of", "above", "below"};
    lex.count_min = 0;
    lex.count_max = 5;
    lex.binary_answers = {"yes", "no"};

    auto reg = [&](const char* s, const char* p) { lex.object_types.push_back({s, p}); };
    reg("table", "tables");
    reg("chair", "chairs");
    reg("bed", "beds");
    reg("sofa", "sofas");
    reg("lamp", "lamps");
    reg("desk", "desks");
    reg("shelf", "shelves");
    reg("wardrobe", "wardrobes");
    reg("dresser", "dressers");
    reg("mirror", "mirrors");
    reg("rug", "rugs");
    reg("television", "televisions");
    reg("computer", "computers");
    reg("vase", "vases");
    reg("plant", "plants");
    reg("bench", "benches");
    reg("stool", "stools");
    reg("cabinet", "cabinets");
    reg("bookcase", "bookcases");
    reg("refrigerator", "refrigerators");
    reg("oven", "ovens");
    reg("sink", "sinks");
    reg("toilet", "toilets");
    reg("bathtub", "bathtubs");
    reg("shower", "showers");
    reg("towel", "towels");
    reg("picture", "pictures");
    reg("clock", "clocks");
    reg("curtain", "curtains");
    reg("pillow", "pillows");
    reg("blanket", "blankets");
    reg("couch", "couches");
    reg("ottoman", "ottomans");
    reg("piano", "pianos");
    reg("fireplace", "fireplaces");
    reg("fan", "fans");
    reg("heater", "heaters");
    reg("washer", "washers");
    reg("dryer", "dryers");
    reg("toybox", "toyboxes");
    reg("bicycle", "bicycles");
    reg("ladder", "ladders");
    reg("bucket", "buckets");
    reg("basket", "baskets");
    return lex;
}

}  // namespace houseqa
