// Timing harness for the two OpenMP kernels against their serial references:
// whole-dataset generation (parallel over houses) and per-video ground truth
// (parallel over frames). Also asserts that parallel output is bit-identical
// to the serial output, since that is the contract the tests rely on.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "houseqa/config.hpp"
#include "houseqa/generator.hpp"
#include "houseqa/ground_truth.hpp"
#include "houseqa/io.hpp"
#include "houseqa/synth.hpp"
#include "houseqa/trajectory.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    auto dt = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double>(dt).count();
}

int bench_dataset(std::uint64_t seed, int houses, int videos, int threads) {
    houseqa::EngineConfig cfg = houseqa::default_config();
    cfg.houses = houses;
    cfg.videos_per_house = videos;

    auto t0 = std::chrono::steady_clock::now();
    houseqa::Dataset serial = houseqa::build_dataset_serial(cfg, seed);
    double serial_s = seconds_since(t0);

    houseqa::GenOptions options;
    options.threads = threads;
    t0 = std::chrono::steady_clock::now();
    houseqa::Dataset parallel = houseqa::build_dataset(cfg, seed, options);
    double parallel_s = seconds_since(t0);

    std::string serial_digest = houseqa::dataset_digest(serial);
    std::string parallel_digest = houseqa::dataset_digest(parallel);

    std::cout << "dataset generation  (" << houses << " houses, " << videos
              << " videos each, " << serial.total_questions() << " questions)\n"
              << "  serial:   " << serial_s << " s\n"
              << "  parallel: " << parallel_s << " s  (speedup "
              << (parallel_s > 0.0 ? serial_s / parallel_s : 0.0) << "x)\n"
              << "  digests " << (serial_digest == parallel_digest ? "match" : "DIFFER") << ": "
              << serial_digest << "\n";
    return serial_digest == parallel_digest ? 0 : 1;
}

int bench_visibility(std::uint64_t seed, int repeats, int threads) {
    houseqa::EngineConfig cfg = houseqa::default_config();
    houseqa::House house = houseqa::synth_house(cfg.synth, cfg.lexicon, seed, "bench-house");
    houseqa::RngStream rng(houseqa::derive_seed(seed, {"bench", "endpoints"}));

    houseqa::Trajectory traj;
    for (int attempt = 0; attempt < 100 && traj.length() == 0; ++attempt) {
        auto [start, goal] = houseqa::sample_endpoints(house, rng);
        auto path = houseqa::shortest_path(house, start, goal);
        if (!path) continue;
        auto candidate = houseqa::path_to_trajectory(house, *path);
        if (candidate && candidate->length() >= 20) traj = *candidate;
    }
    if (traj.length() == 0) {
        std::cerr << "could not sample a benchmark trajectory\n";
        return 1;
    }

    auto t0 = std::chrono::steady_clock::now();
    houseqa::TrajectoryGroundTruth serial_gt;
    for (int i = 0; i < repeats; ++i) {
        serial_gt = houseqa::compute_trajectory_gt_serial(house, traj, cfg.fov);
    }
    double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    houseqa::TrajectoryGroundTruth parallel_gt;
    for (int i = 0; i < repeats; ++i) {
        parallel_gt = houseqa::compute_trajectory_gt(house, traj, cfg.fov, threads);
    }
    double parallel_s = seconds_since(t0);

    bool equal = serial_gt == parallel_gt;
    std::cout << "per-frame ground truth  (" << traj.length() << " poses, " << repeats
              << " repeats)\n"
              << "  serial:   " << serial_s << " s\n"
              << "  parallel: " << parallel_s << " s  (speedup "
              << (parallel_s > 0.0 ? serial_s / parallel_s : 0.0) << "x)\n"
              << "  results " << (equal ? "match" : "DIFFER") << "\n";
    return equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs. parallel kernel benchmarks"};
    std::uint64_t seed = 7;
    int houses = 8;
    int videos = 40;
    int repeats = 2000;
    int threads = 0;
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--houses", houses, "Houses for the dataset benchmark");
    app.add_option("--videos", videos, "Videos per house");
    app.add_option("--repeats", repeats, "Repeats for the ground-truth benchmark");
    app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)");
    CLI11_PARSE(app, argc, argv);

    int rc = bench_dataset(seed, houses, videos, threads);
    rc |= bench_visibility(seed, repeats, threads);
    return rc;
}
