#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "houseqa/ground_truth.hpp"
#include "houseqa/program.hpp"
#include "houseqa/scene.hpp"

namespace houseqa {

// Values substituted into a program instance. `values` maps binding keys
// (tag keys like "attr1", "rel") to concrete words; `set_members` holds one
// entry per member of the template's set(...) group, keyed by the unnumbered
// tag key ("attr", "obj_type" or "room_type").
struct Bindings {
    std::map<std::string, std::string> values;
    std::vector<std::map<std::string, std::string>> set_members;

    bool operator==(const Bindings&) const = default;
};

// Raised for malformed inputs: bindings missing a key a program asks for,
// ground truth referencing unknown object or room ids. Never raised for
// semantically unanswerable questions; those return nullopt.
struct ExecutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs a program against what a video saw. Returns the answer word, or
// nullopt when the question is invalid for this video: a reference does not
// resolve to exactly one seen object, references required to be distinct
// coincide, ForAll quantifies over an empty set, or a count exceeds
// count_max. The program must type-check.
std::optional<std::string> execute(const Program& program, const Bindings& bindings,
                                   const House& house, const TrajectoryGroundTruth& gt,
                                   int count_max = 5);

// True when the relation holds between subject and reference. Both must be
// in the same room and distinct, which the caller guarantees. Used by Relate
// and exposed for tests.
bool relation_holds(const std::string& rel, const ObjectInstance& subject,
                    const ObjectInstance& reference);

}  // namespace houseqa
