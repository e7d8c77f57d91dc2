#include "houseqa/audit.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace houseqa {

namespace {

using nlohmann::json;

std::vector<const QARecord*> collect_questions(const Dataset& ds) {
    std::vector<const QARecord*> out;
    for (const SplitData* split : ds.splits()) {
        for (const QARecord& rec : split->questions) out.push_back(&rec);
    }
    return out;
}

std::vector<const QARecord*> split_questions(const SplitData& split) {
    std::vector<const QARecord*> out;
    for (const QARecord& rec : split.questions) out.push_back(&rec);
    return out;
}

// Lexicographically first among the most frequent answers. std::map iterates
// in answer order, so the first strict maximum is the tie-break winner.
std::string majority_answer(const std::map<std::string, long long>& freq) {
    std::string best;
    long long best_n = -1;
    for (const auto& [answer, n] : freq) {
        if (n > best_n) {
            best = answer;
            best_n = n;
        }
    }
    return best;
}

double ratio(long long num, long long den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

json int_keyed(const std::map<int, long long>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[std::to_string(k)] = v;
    return out;
}

}  // namespace

AuditReport dataset_stats(const Dataset& dataset) {
    AuditReport report;
    auto questions = collect_questions(dataset);
    if (questions.empty()) throw std::invalid_argument("audit: dataset has no questions");

    for (const QARecord* rec : questions) {
        ++report.total_questions;
        ++report.category_counts[rec->category];
        ++report.template_counts[rec->template_id];
        int tokens = token_count(rec->text);
        ++report.question_length_hist[tokens];
        report.max_question_tokens = std::max(report.max_question_tokens, tokens);
        ++report.answer_freq[rec->answer];
    }
    for (const SplitData* split : dataset.splits()) {
        for (const VideoRecord& video : split->videos) {
            ++report.total_videos;
            int frames = video.trajectory.length();
            ++report.video_length_hist[frames];
            report.max_video_frames = std::max(report.max_video_frames, frames);
        }
    }
    for (const auto& [category, n] : report.category_counts) {
        report.category_proportions[category] = ratio(n, report.total_questions);
    }
    report.binary_fraction = binary_fraction(questions);

    long long quota_total = 0;
    long long quota_binary = 0;
    for (const QuestionTemplate& tmpl : builtin_templates()) {
        quota_total += tmpl.default_quota;
        if (category_is_binary(tmpl.category)) quota_binary += tmpl.default_quota;
    }
    report.reference_binary_derived = ratio(quota_binary, quota_total);
    return report;
}

double binary_fraction(const std::vector<const QARecord*>& records) {
    if (records.empty()) return 0.0;
    long long binary = 0;
    for (const QARecord* rec : records) {
        if (category_is_binary(rec->category)) ++binary;
    }
    return ratio(binary, static_cast<long long>(records.size()));
}

MajorityBaseline majority_baseline(const std::vector<const QARecord*>& train,
                                   const std::vector<const QARecord*>& eval) {
    if (train.empty()) throw std::invalid_argument("audit: empty train split");
    if (eval.empty()) throw std::invalid_argument("audit: empty eval split");

    std::map<std::string, long long> global_freq;
    std::map<int, std::map<std::string, long long>> per_template_freq;
    for (const QARecord* rec : train) {
        ++global_freq[rec->answer];
        ++per_template_freq[rec->template_id][rec->answer];
    }

    MajorityBaseline result;
    result.global_majority_answer = majority_answer(global_freq);
    std::map<int, std::string> template_majority;
    for (const auto& [tid, freq] : per_template_freq) {
        template_majority[tid] = majority_answer(freq);
    }

    auto score = [&](const std::vector<const QARecord*>& records, double& global_acc,
                     double& per_template_acc, bool count_fallbacks,
                     std::map<std::string, double>* global_by_cat,
                     std::map<std::string, double>* per_template_by_cat) {
        long long global_hits = 0;
        long long template_hits = 0;
        std::map<std::string, long long> cat_total, cat_global, cat_template;
        for (const QARecord* rec : records) {
            bool ghit = rec->answer == result.global_majority_answer;
            auto it = template_majority.find(rec->template_id);
            std::string predicted;
            if (it == template_majority.end()) {
                predicted = result.global_majority_answer;
                if (count_fallbacks) ++result.fallback_records;
            } else {
                predicted = it->second;
            }
            bool thit = rec->answer == predicted;
            global_hits += ghit;
            template_hits += thit;
            ++cat_total[rec->category];
            cat_global[rec->category] += ghit;
            cat_template[rec->category] += thit;
        }
        long long n = static_cast<long long>(records.size());
        global_acc = ratio(global_hits, n);
        per_template_acc = ratio(template_hits, n);
        if (global_by_cat) {
            for (const auto& [cat, total] : cat_total) {
                (*global_by_cat)[cat] = ratio(cat_global[cat], total);
                (*per_template_by_cat)[cat] = ratio(cat_template[cat], total);
            }
        }
    };

    result.eval_records = static_cast<long long>(eval.size());
    score(eval, result.global_accuracy, result.per_template_accuracy, true,
          &result.global_by_category, &result.per_template_by_category);
    score(train, result.train_global_fit, result.train_per_template_fit, false, nullptr, nullptr);
    return result;
}

AuditReport audit_dataset(const Dataset& dataset) {
    AuditReport report = dataset_stats(dataset);
    auto train = split_questions(dataset.train);
    auto eval = split_questions(dataset.validation);
    for (const QARecord& rec : dataset.test.questions) eval.push_back(&rec);
    report.baseline = majority_baseline(train, eval);
    return report;
}

std::string report_to_json(const AuditReport& r) {
    json j{{"total_questions", r.total_questions},
           {"total_videos", r.total_videos},
           {"category_counts", r.category_counts},
           {"category_proportions", r.category_proportions},
           {"template_counts", int_keyed(r.template_counts)},
           {"question_length_hist", int_keyed(r.question_length_hist)},
           {"video_length_hist", int_keyed(r.video_length_hist)},
           {"answer_freq", r.answer_freq},
           {"max_question_tokens", r.max_question_tokens},
           {"max_video_frames", r.max_video_frames},
           {"binary_fraction", r.binary_fraction},
           {"reference_binary_derived", r.reference_binary_derived},
           {"reference_binary_stated", r.reference_binary_stated},
           {"baseline",
            {{"global_majority_answer", r.baseline.global_majority_answer},
             {"global_accuracy", r.baseline.global_accuracy},
             {"per_template_accuracy", r.baseline.per_template_accuracy},
             {"global_by_category", r.baseline.global_by_category},
             {"per_template_by_category", r.baseline.per_template_by_category},
             {"eval_records", r.baseline.eval_records},
             {"fallback_records", r.baseline.fallback_records},
             {"train_global_fit", r.baseline.train_global_fit},
             {"train_per_template_fit", r.baseline.train_per_template_fit}}}};
    return j.dump(2) + "\n";
}

std::string report_table(const AuditReport& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "questions: " << r.total_questions << "  videos: " << r.total_videos << "\n";
    out << "max question tokens: " << r.max_question_tokens
        << "  max video frames: " << r.max_video_frames << "\n";
    out << "binary fraction: " << r.binary_fraction
        << "  (references: " << r.reference_binary_derived << " derived, "
        << r.reference_binary_stated << " stated)\n";
    out << "category proportions:\n";
    for (const auto& [category, share] : r.category_proportions) {
        out << "  " << std::left << std::setw(20) << category << std::right << share << "  ("
            << r.category_counts.at(category) << ")\n";
    }
    out << "top answers:\n";
    std::vector<std::pair<std::string, long long>> answers(r.answer_freq.begin(),
                                                           r.answer_freq.end());
    std::stable_sort(answers.begin(), answers.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < answers.size() && i < 8; ++i) {
        out << "  " << std::left << std::setw(20) << answers[i].first << std::right
            << answers[i].second << "\n";
    }
    out << "majority baselines (eval = validation + test, " << r.baseline.eval_records
        << " records):\n";
    out << "  global  [" << r.baseline.global_majority_answer
        << "]: " << r.baseline.global_accuracy << "\n";
    out << "  per-template: " << r.baseline.per_template_accuracy
        << "  (fallbacks: " << r.baseline.fallback_records << ")\n";
    out << "  train fit: global " << r.baseline.train_global_fit << ", per-template "
        << r.baseline.train_per_template_fit << "\n";
    return out.str();
}

}  // namespace houseqa
