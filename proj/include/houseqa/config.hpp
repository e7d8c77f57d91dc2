#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "houseqa/lexicon.hpp"
#include "houseqa/synth.hpp"
#include "houseqa/visibility.hpp"

namespace houseqa {

inline constexpr int kConfigFormatVersion = 1;

// Steers template sampling toward target proportions and bounds the
// generation effort per video.
struct QuotaPlan {
    std::map<int, double> proportions;  // template id -> target share, sums to 1
    int per_house_video_cap = 150;
    int questions_per_video = 1;
    int retry_budget = 30;  // binding resamples per instantiation
};

// Proportions from the built-in template weights, normalized.
QuotaPlan default_quota_plan();

std::vector<std::string> validate_quota_plan(const QuotaPlan& plan);

struct EngineConfig {
    Lexicon lexicon;
    SynthConfig synth;
    FovConfig fov;
    QuotaPlan quota;

    // Split weights by house count (train : validation : test).
    double split_train = 622.0;
    double split_validation = 65.0;
    double split_test = 56.0;

    int houses = 20;
    int videos_per_house = 120;
    bool subsample = true;
    int min_seen_objects = 2;   // minimum-visibility guard per video
    int endpoint_attempts = 20; // trajectory resamples per video slot
};

EngineConfig default_config();

// All structural problems with the config; empty means usable.
std::vector<std::string> validate_config(const EngineConfig& cfg);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single-document JSON round-trip. load_config throws ConfigError on
// unreadable files, version mismatch, or validation failure.
std::string config_to_json(const EngineConfig& cfg);
EngineConfig config_from_json(const std::string& text);
EngineConfig load_config(const std::string& path);
void save_config(const EngineConfig& cfg, const std::string& path);

// Digest of the canonical serialized form; manifests embed it so a dataset
// can be matched to the exact configuration that produced it.
std::string config_digest(const EngineConfig& cfg);

}  // namespace houseqa
