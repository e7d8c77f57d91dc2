#include "houseqa/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "houseqa/rng.hpp"
#include "houseqa/templates.hpp"
#include "json.hpp"

namespace houseqa {

namespace {

using nlohmann::json;

json lexicon_to_json(const Lexicon& lex) {
    json types = json::array();
    for (const auto& rec : lex.object_types) {
        types.push_back({{"singular", rec.singular}, {"plural", rec.plural}});
    }
    return json{{"object_types", types},
                {"room_types", lex.room_types},
                {"colors", lex.colors},
                {"extra_attrs", lex.extra_attrs},
                {"relations", lex.relations},
                {"count_min", lex.count_min},
                {"count_max", lex.count_max},
                {"binary_answers", {lex.binary_answers.first, lex.binary_answers.second}}};
}

Lexicon lexicon_from_json(const json& j) {
    Lexicon lex;
    lex.object_types.clear();
    for (const auto& rec : j.at("object_types")) {
        lex.object_types.push_back({rec.at("singular").get<std::string>(),
                                    rec.at("plural").get<std::string>()});
    }
    lex.room_types = j.at("room_types").get<std::vector<std::string>>();
    lex.colors = j.at("colors").get<std::vector<std::string>>();
    lex.extra_attrs = j.at("extra_attrs").get<std::vector<std::string>>();
    lex.relations = j.at("relations").get<std::vector<std::string>>();
    lex.count_min = j.at("count_min").get<int>();
    lex.count_max = j.at("count_max").get<int>();
    const auto& binary = j.at("binary_answers");
    lex.binary_answers = {binary.at(0).get<std::string>(), binary.at(1).get<std::string>()};
    return lex;
}

json synth_to_json(const SynthConfig& s) {
    return json{{"grid_width", s.grid_width},
                {"grid_height", s.grid_height},
                {"min_rooms", s.min_rooms},
                {"max_rooms", s.max_rooms},
                {"min_room_size", s.min_room_size},
                {"min_objects_per_room", s.min_objects_per_room},
                {"max_objects_per_room", s.max_objects_per_room},
                {"extra_attr_prob", s.extra_attr_prob},
                {"extra_doorway_prob", s.extra_doorway_prob},
                {"duplicate_prob", s.duplicate_prob}};
}

SynthConfig synth_from_json(const json& j) {
    SynthConfig s;
    s.grid_width = j.value("grid_width", s.grid_width);
    s.grid_height = j.value("grid_height", s.grid_height);
    s.min_rooms = j.value("min_rooms", s.min_rooms);
    s.max_rooms = j.value("max_rooms", s.max_rooms);
    s.min_room_size = j.value("min_room_size", s.min_room_size);
    s.min_objects_per_room = j.value("min_objects_per_room", s.min_objects_per_room);
    s.max_objects_per_room = j.value("max_objects_per_room", s.max_objects_per_room);
    s.extra_attr_prob = j.value("extra_attr_prob", s.extra_attr_prob);
    s.extra_doorway_prob = j.value("extra_doorway_prob", s.extra_doorway_prob);
    s.duplicate_prob = j.value("duplicate_prob", s.duplicate_prob);
    return s;
}

json quota_to_json(const QuotaPlan& q) {
    json props = json::object();
    for (const auto& [id, share] : q.proportions) {
        props[std::to_string(id)] = share;
    }
    return json{{"proportions", props},
                {"per_house_video_cap", q.per_house_video_cap},
                {"questions_per_video", q.questions_per_video},
                {"retry_budget", q.retry_budget}};
}

QuotaPlan quota_from_json(const json& j) {
    QuotaPlan q = default_quota_plan();
    if (j.contains("proportions")) {
        q.proportions.clear();
        for (const auto& [key, value] : j.at("proportions").items()) {
            q.proportions[std::stoi(key)] = value.get<double>();
        }
    }
    q.per_house_video_cap = j.value("per_house_video_cap", q.per_house_video_cap);
    q.questions_per_video = j.value("questions_per_video", q.questions_per_video);
    q.retry_budget = j.value("retry_budget", q.retry_budget);
    return q;
}

}  // namespace

QuotaPlan default_quota_plan() {
    QuotaPlan plan;
    long long total = 0;
    for (const auto& t : builtin_templates()) total += t.default_quota;
    for (const auto& t : builtin_templates()) {
        plan.proportions[t.id] = static_cast<double>(t.default_quota) / static_cast<double>(total);
    }
    return plan;
}

std::vector<std::string> validate_quota_plan(const QuotaPlan& plan) {
    std::vector<std::string> problems;
    if (plan.proportions.empty()) problems.push_back("quota: no template proportions");
    double sum = 0.0;
    int template_count = static_cast<int>(builtin_templates().size());
    for (const auto& [id, share] : plan.proportions) {
        if (id < 1 || id > template_count) {
            problems.push_back("quota: unknown template id " + std::to_string(id));
        }
        if (share < 0.0) {
            problems.push_back("quota: negative proportion for template " + std::to_string(id));
        }
        sum += share;
    }
    if (!plan.proportions.empty() && std::abs(sum - 1.0) > 1e-9) {
        problems.push_back("quota: proportions sum to " + std::to_string(sum) + ", expected 1");
    }
    if (plan.per_house_video_cap < 1 || plan.per_house_video_cap > 150) {
        problems.push_back("quota: per_house_video_cap must be in [1, 150]");
    }
    if (plan.questions_per_video < 1) problems.push_back("quota: questions_per_video must be >= 1");
    if (plan.retry_budget < 1) problems.push_back("quota: retry_budget must be >= 1");
    return problems;
}

EngineConfig default_config() {
    EngineConfig cfg;
    cfg.lexicon = default_lexicon();
    cfg.quota = default_quota_plan();
    return cfg;
}

std::vector<std::string> validate_config(const EngineConfig& cfg) {
    std::vector<std::string> problems = validate_lexicon(cfg.lexicon);
    for (const auto& p : validate_synth_config(cfg.synth)) problems.push_back(p);
    for (const auto& p : validate_quota_plan(cfg.quota)) problems.push_back(p);
    if (cfg.synth.min_rooms < 2) {
        problems.push_back("synth: min_rooms must be >= 2 so trajectories can cross rooms");
    }
    if (cfg.fov.fov_degrees <= 0.0 || cfg.fov.fov_degrees > 180.0) {
        problems.push_back("fov: fov_degrees must be in (0, 180]");
    }
    if (cfg.fov.max_view_distance < 1) {
        problems.push_back("fov: max_view_distance must be >= 1");
    }
    if (cfg.split_train <= 0.0 || cfg.split_validation <= 0.0 || cfg.split_test <= 0.0) {
        problems.push_back("splits: all three weights must be positive");
    }
    if (cfg.houses < 1) problems.push_back("houses must be >= 1");
    if (cfg.videos_per_house < 1 || cfg.videos_per_house > cfg.quota.per_house_video_cap) {
        problems.push_back("videos_per_house must be in [1, per_house_video_cap]");
    }
    if (cfg.min_seen_objects < 0) problems.push_back("min_seen_objects must be >= 0");
    if (cfg.endpoint_attempts < 1) problems.push_back("endpoint_attempts must be >= 1");
    return problems;
}

std::string config_to_json(const EngineConfig& cfg) {
    json j{{"format_version", kConfigFormatVersion},
           {"lexicon", lexicon_to_json(cfg.lexicon)},
           {"synth", synth_to_json(cfg.synth)},
           {"fov", {{"fov_degrees", cfg.fov.fov_degrees},
                    {"max_view_distance", cfg.fov.max_view_distance}}},
           {"quota", quota_to_json(cfg.quota)},
           {"splits", {{"train", cfg.split_train},
                       {"validation", cfg.split_validation},
                       {"test", cfg.split_test}}},
           {"houses", cfg.houses},
           {"videos_per_house", cfg.videos_per_house},
           {"subsample", cfg.subsample},
           {"min_seen_objects", cfg.min_seen_objects},
           {"endpoint_attempts", cfg.endpoint_attempts}};
    return j.dump(2) + "\n";
}

EngineConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        int version = j.at("format_version").get<int>();
        if (version != kConfigFormatVersion) {
            throw ConfigError("config format_version " + std::to_string(version) +
                              " unsupported, expected " + std::to_string(kConfigFormatVersion));
        }
        EngineConfig cfg = default_config();
        if (j.contains("lexicon")) cfg.lexicon = lexicon_from_json(j.at("lexicon"));
        if (j.contains("synth")) cfg.synth = synth_from_json(j.at("synth"));
        if (j.contains("fov")) {
            const auto& f = j.at("fov");
            cfg.fov.fov_degrees = f.value("fov_degrees", cfg.fov.fov_degrees);
            cfg.fov.max_view_distance = f.value("max_view_distance", cfg.fov.max_view_distance);
        }
        if (j.contains("quota")) cfg.quota = quota_from_json(j.at("quota"));
        if (j.contains("splits")) {
            const auto& s = j.at("splits");
            cfg.split_train = s.value("train", cfg.split_train);
            cfg.split_validation = s.value("validation", cfg.split_validation);
            cfg.split_test = s.value("test", cfg.split_test);
        }
        cfg.houses = j.value("houses", cfg.houses);
        cfg.videos_per_house = j.value("videos_per_house", cfg.videos_per_house);
        cfg.subsample = j.value("subsample", cfg.subsample);
        cfg.min_seen_objects = j.value("min_seen_objects", cfg.min_seen_objects);
        cfg.endpoint_attempts = j.value("endpoint_attempts", cfg.endpoint_attempts);
        auto problems = validate_config(cfg);
        if (!problems.empty()) {
            std::string msg = "invalid config:";
            for (const auto& p : problems) msg += "\n  " + p;
            throw ConfigError(msg);
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }
}

EngineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

void save_config(const EngineConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file " + path);
    out << config_to_json(cfg);
    if (!out) throw ConfigError("short write to config file " + path);
}

std::string config_digest(const EngineConfig& cfg) {
    Fnv1a h;
    h.update(config_to_json(cfg));
    return h.hex();
}

}  // namespace houseqa
