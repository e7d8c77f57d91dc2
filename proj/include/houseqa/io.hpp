#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "houseqa/generator.hpp"

namespace houseqa {

inline constexpr int kDatasetFormatVersion = 1;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SplitListing {
    std::vector<std::string> house_ids;
    std::vector<std::string> video_ids;
    std::vector<std::string> question_ids;
};

struct DatasetManifest {
    int format_version = kDatasetFormatVersion;
    std::uint64_t master_seed = 0;
    std::string config_digest;
    std::string dataset_digest;
    SplitListing train;
    SplitListing validation;
    SplitListing test;
    std::map<int, long long> template_counts;
    GenTelemetry telemetry;
};

// Newline-delimited record codecs. Each line is one self-contained JSON
// object; parse errors throw IoError naming the problem.
std::string qa_record_to_line(const QARecord& rec);
QARecord qa_record_from_line(const std::string& line);
std::string video_record_to_line(const VideoRecord& video);
VideoRecord video_record_from_line(const std::string& line);

// Content digest over the canonical serialized form of everything that
// defines the dataset (config, seed, houses, per-split records). Two
// generations are interchangeable iff their digests match.
std::string dataset_digest(const Dataset& dataset);

// Directory layout:
//   config.json, lexicon.json, houses.json, manifest.json
//   <split>/questions.jsonl, <split>/ground_truth.jsonl
// write_dataset creates directories as needed and returns the manifest it
// wrote. read_dataset loads the whole directory back; round-tripping
// preserves every record. Both throw IoError on any file or schema problem,
// with a line number for record files.
DatasetManifest write_dataset(const Dataset& dataset, const std::string& directory);
Dataset read_dataset(const std::string& directory, DatasetManifest* manifest_out = nullptr);

// Self-contained execution fixture for the `exec` subcommand: one house plus
// one video's ground truth in a single document.
struct ExecFixture {
    House house;
    TrajectoryGroundTruth gt;
};
void write_exec_fixture(const ExecFixture& fixture, const std::string& path);
ExecFixture read_exec_fixture(const std::string& path);

// Bindings document for `exec` (--bindings).
Bindings read_bindings_file(const std::string& path);
void write_bindings_file(const Bindings& bindings, const std::string& path);

// Full invariant check of a dataset directory: schema versions, manifest
// listings vs. disk, digests, split house disjointness, per-house video cap,
// house validity, ground-truth references, answer vocabulary, question/video
// length bounds, sub-sampling law, tag-value attestation, and 100% answer
// re-execution. Returns one message per violation; empty means clean.
std::vector<std::string> validate_dataset(const std::string& directory);

}  // namespace houseqa
