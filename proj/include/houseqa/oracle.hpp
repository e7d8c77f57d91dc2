#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "houseqa/executor.hpp"
#include "houseqa/templates.hpp"

namespace houseqa {

// Answers a template instance by direct exhaustive enumeration over the
// ground-truth sets, written against each template's logical definition
// rather than the op pipeline. Used to cross-check the executor.
std::optional<std::string> oracle_answer(const QuestionTemplate& tmpl, const Bindings& bindings,
                                         const House& house, const TrajectoryGroundTruth& gt,
                                         int count_max = 5);

struct OracleMismatch {
    std::uint64_t scenario = 0;
    int template_id = 0;
    std::string detail;
};

struct AgreementResult {
    long long scenarios = 0;
    long long scenarios_agreed = 0;
    long long checks = 0;
    long long checks_agreed = 0;
    std::vector<OracleMismatch> mismatches;  // capped at a handful

    bool all_agree() const { return scenarios == scenarios_agreed; }
};

// Builds `scenarios` seeded random small ground truths; for each, instantiates
// every template with randomized (partly unattested) bindings and compares
// executor and oracle answers, Invalid included.
AgreementResult run_oracle_agreement(std::uint64_t seed, int scenarios, int count_max = 5);

}  // namespace houseqa
