#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "houseqa/config.hpp"
#include "houseqa/executor.hpp"
#include "houseqa/ground_truth.hpp"
#include "houseqa/templates.hpp"
#include "houseqa/trajectory.hpp"

namespace houseqa {

struct QARecord {
    std::string question_id;
    std::string house_id;
    std::string video_id;
    int template_id = 0;
    std::string category;
    std::string text;
    Bindings bindings;
    std::string answer;
    std::uint64_t seed = 0;  // stream seed this record was drawn from

    bool operator==(const QARecord&) const = default;
};

struct VideoRecord {
    Trajectory trajectory;
    TrajectoryGroundTruth gt;
    std::vector<std::size_t> subsample;  // kept frame indices; empty = disabled

    bool operator==(const VideoRecord&) const = default;
};

struct GenTelemetry {
    std::map<int, long long> rejected_attempts;  // template id -> invalid bindings
    std::map<int, long long> uninstantiable;     // template id -> empty candidate set
    std::map<int, long long> template_counts;    // template id -> emitted records
    long long discarded_trajectories = 0;        // unreachable / too long / too little seen
    long long skipped_videos = 0;                // video slots that produced nothing

    void merge(const GenTelemetry& other);
};

struct SplitData {
    std::string name;
    std::vector<std::string> house_ids;
    std::vector<VideoRecord> videos;
    std::vector<QARecord> questions;
};

struct Dataset {
    EngineConfig config;
    std::uint64_t master_seed = 0;
    std::vector<House> houses;
    SplitData train;
    SplitData validation;
    SplitData test;
    GenTelemetry telemetry;

    std::vector<const SplitData*> splits() const { return {&train, &validation, &test}; }
    const House* find_house(const std::string& house_id) const;
    long long total_questions() const;
};

// Per-tag candidate values attested in the video's ground truth, keyed by tag
// token (e.g. "attr1", "obj_type{}"). Comparatives and relations draw from
// their fixed word lists. An empty vector for any key makes the template
// uninstantiable on this video. Query-color attribute slots exclude colors.
std::map<std::string, std::vector<std::string>> candidate_sets(const QuestionTemplate& tmpl,
                                                               const TrajectoryGroundTruth& gt,
                                                               const House& house,
                                                               const Lexicon& lexicon);

// Draws bindings from the candidate sets up to `retry_budget` times until the
// program executes to a valid answer. nullopt when every attempt was invalid
// or a candidate set is empty; telemetry records which.
std::optional<QARecord> instantiate(const QuestionTemplate& tmpl, const TrajectoryGroundTruth& gt,
                                    const House& house, const Lexicon& lexicon, int count_max,
                                    int retry_budget, RngStream& rng, GenTelemetry& telemetry);

// House-local quota state. Tracking is per house so that parallel generation
// over houses is bitwise identical to serial generation.
class QuotaTracker {
public:
    QuotaTracker(const QuotaPlan& plan, int planned_questions);

    // Weighted draw favoring templates still under target; ids in `skip` are
    // excluded. Returns 0 when everything is excluded.
    int sample_template(RngStream& rng, const std::vector<int>& skip) const;
    void record_emitted(int template_id);

private:
    std::vector<int> ids_;
    std::vector<double> target_;
    std::vector<long long> emitted_;
};

// Up to questions_per_video records for one video; may be empty when every
// sampled template rejects.
std::vector<QARecord> generate_for_video(const House& house, const TrajectoryGroundTruth& gt,
                                         const EngineConfig& cfg, std::uint64_t master_seed,
                                         QuotaTracker& tracker, GenTelemetry& telemetry);

// Everything generated for one house: the house itself, its kept videos and
// their QA records. Pure function of (config, master seed, house index).
struct HouseBundle {
    House house;
    std::vector<VideoRecord> videos;
    std::vector<QARecord> questions;
    GenTelemetry telemetry;
};

HouseBundle generate_house_bundle(const EngineConfig& cfg, std::uint64_t master_seed,
                                  int house_index);

struct GenOptions {
    bool parallel = true;
    int threads = 0;  // 0 = OpenMP default
};

// Full pipeline: synthesize houses, generate videos and questions, partition
// into train/validation/test by house. Throws ConfigError on invalid config
// and std::invalid_argument with fewer than 3 houses. Output is a pure
// function of (config, master seed); the parallel path is bitwise equal to
// the serial one.
Dataset build_dataset(const EngineConfig& cfg, std::uint64_t master_seed,
                      const GenOptions& options = {});

// Reference implementation without OpenMP, kept for testing and benchmarks.
Dataset build_dataset_serial(const EngineConfig& cfg, std::uint64_t master_seed);

// Largest-remainder apportionment of `n` houses to the three split weights,
// each split getting at least one house. Throws std::invalid_argument for
// n < 3. Returned triple sums to n.
std::array<int, 3> split_house_counts(int n, double w_train, double w_validation, double w_test);

}  // namespace houseqa
