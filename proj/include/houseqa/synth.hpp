#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "houseqa/lexicon.hpp"
#include "houseqa/scene.hpp"

namespace houseqa {

struct SynthConfig {
    int grid_width = 30;
    int grid_height = 30;
    int min_rooms = 4;
    int max_rooms = 8;
    int min_room_size = 3;  // minimum side of a room interior
    int min_objects_per_room = 3;
    int max_objects_per_room = 10;
    double extra_attr_prob = 0.45;   // per extra attribute, independently
    double extra_doorway_prob = 0.3; // per non-tree adjacency
    double duplicate_prob = 0.35;    // inject an identical (type, attrs) pair
};

struct SynthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems that make a config unusable (empty ranges, grid too small to hold
// max_rooms at min_room_size). Checked when configs are loaded.
std::vector<std::string> validate_synth_config(const SynthConfig& cfg);

// Procedurally generates a valid house: recursive rectangle partition into
// rooms separated by unit wall bands, spanning-tree doorway carving plus
// random extras, then object placement. Pure function of (config, lexicon,
// seed); identical inputs give an identical house. Throws SynthError when
// layout placement fails after bounded retries (config too tight for the
// grid).
House synth_house(const SynthConfig& cfg, const Lexicon& lex, std::uint64_t seed,
                  const std::string& house_id = "");

}  // namespace houseqa
