#pragma once

#include <map>
#include <string>
#include <vector>

#include "houseqa/generator.hpp"

namespace houseqa {

// Frequency baselines over (template id, answer) pairs only; no visual or
// textual features. Stand-ins for learned question-only probes: they lower-
// bound such models, so dataset bias shows up without any training loop.
struct MajorityBaseline {
    std::string global_majority_answer;
    double global_accuracy = 0.0;        // on eval
    double per_template_accuracy = 0.0;  // on eval
    std::map<std::string, double> global_by_category;
    std::map<std::string, double> per_template_by_category;
    long long eval_records = 0;
    long long fallback_records = 0;  // eval templates unseen in train
    double train_global_fit = 0.0;
    double train_per_template_fit = 0.0;
};

struct AuditReport {
    long long total_questions = 0;
    long long total_videos = 0;
    std::map<std::string, long long> category_counts;
    std::map<std::string, double> category_proportions;
    std::map<int, long long> template_counts;
    std::map<int, long long> question_length_hist;  // tokens -> questions
    std::map<int, long long> video_length_hist;     // frames -> videos
    std::map<std::string, long long> answer_freq;
    int max_question_tokens = 0;
    int max_video_frames = 0;
    double binary_fraction = 0.0;
    // Two published reference points the measured fraction sits between:
    // the one derived from the per-template counts and the stated ~66%.
    double reference_binary_derived = 0.0;
    double reference_binary_stated = 0.66;
    MajorityBaseline baseline;
};

// Distribution fields only (no baselines). Deterministic, order-independent.
// Throws std::invalid_argument on a dataset with no questions.
AuditReport dataset_stats(const Dataset& dataset);

// Fraction of records whose template category is binary-answered.
double binary_fraction(const std::vector<const QARecord*>& records);

// Fits majorities on train, scores eval. Ties break lexicographically; eval
// templates absent from train fall back to the global majority (counted).
// Throws std::invalid_argument when either side is empty.
MajorityBaseline majority_baseline(const std::vector<const QARecord*>& train,
                                   const std::vector<const QARecord*>& eval);

// Full report: stats plus baselines with train as the fit split and
// validation+test as eval.
AuditReport audit_dataset(const Dataset& dataset);

std::string report_to_json(const AuditReport& report);

// Human-readable summary table for standard output.
std::string report_table(const AuditReport& report);

}  // namespace houseqa
