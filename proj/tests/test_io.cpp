#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "houseqa/audit.hpp"
#include "houseqa/config.hpp"
#include "houseqa/generator.hpp"
#include "houseqa/io.hpp"
#include "oracles.hpp"

using namespace houseqa;
using namespace houseqa::testing;
namespace fs = std::filesystem;

namespace {

EngineConfig small_config() {
    EngineConfig cfg = default_config();
    cfg.houses = 4;
    cfg.videos_per_house = 8;
    cfg.synth.grid_width = 20;
    cfg.synth.grid_height = 20;
    cfg.synth.max_rooms = 4;
    return cfg;
}

const Dataset& small_dataset() {
    static Dataset ds = build_dataset(small_config(), 55);
    return ds;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("houseqa_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string cli_path() {
    if (const char* env = std::getenv("HOUSEQA_BIN")) return env;
    return HOUSEQA_BIN_PATH;
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    fs::path capture = fs::temp_directory_path() /
                       ("houseqa_cli_out_" + std::to_string(counter++) + ".txt");
    std::string cmd = env_prefix + cli_path() + " " + args + " > " +
                      capture.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.output = slurp(capture);
    fs::remove(capture);
    return result;
}

}  // namespace

TEST_CASE("qa record line codec round-trips") {
    const Dataset& ds = small_dataset();
    REQUIRE_FALSE(ds.train.questions.empty());
    for (std::size_t i = 0; i < ds.train.questions.size() && i < 20; ++i) {
        const QARecord& rec = ds.train.questions[i];
        QARecord back = qa_record_from_line(qa_record_to_line(rec));
        CHECK(back == rec);
    }
    QARecord with_sets;
    with_sets.question_id = "v-q0";
    with_sets.house_id = "house-000";
    with_sets.video_id = "v";
    with_sets.template_id = 20;
    with_sets.category = kCategoryExist;
    with_sets.text = "Is there a red sofa and a blue lamp?";
    with_sets.bindings.set_members = {{{"attr", "red"}, {"obj_type", "sofa"}},
                                      {{"attr", "blue"}, {"obj_type", "lamp"}}};
    with_sets.answer = "yes";
    with_sets.seed = 12345;
    CHECK(qa_record_from_line(qa_record_to_line(with_sets)) == with_sets);
    CHECK_THROWS_AS(qa_record_from_line("{not json"), IoError);
    CHECK_THROWS_AS(qa_record_from_line("{\"question_id\": \"x\"}"), IoError);
}

TEST_CASE("video record line codec round-trips") {
    const Dataset& ds = small_dataset();
    REQUIRE_FALSE(ds.train.videos.empty());
    for (std::size_t i = 0; i < ds.train.videos.size() && i < 10; ++i) {
        const VideoRecord& video = ds.train.videos[i];
        VideoRecord back = video_record_from_line(video_record_to_line(video));
        CHECK(back == video);
    }
    CHECK_THROWS_AS(video_record_from_line("[]"), IoError);
}

TEST_CASE("dataset directory round-trips exactly") {
    const Dataset& ds = small_dataset();
    fs::path dir = fresh_dir("roundtrip");
    DatasetManifest manifest = write_dataset(ds, dir.string());
    CHECK(manifest.dataset_digest == dataset_digest(ds));
    CHECK(manifest.config_digest == config_digest(ds.config));
    for (const char* name : {"config.json", "lexicon.json", "houses.json", "manifest.json",
                             "train/questions.jsonl", "train/ground_truth.jsonl",
                             "validation/questions.jsonl", "test/questions.jsonl"}) {
        CHECK(fs::exists(dir / name));
    }

    DatasetManifest read_manifest;
    Dataset back = read_dataset(dir.string(), &read_manifest);
    CHECK(read_manifest.dataset_digest == manifest.dataset_digest);
    CHECK(dataset_digest(back) == dataset_digest(ds));
    CHECK(back.master_seed == ds.master_seed);
    CHECK(back.houses == ds.houses);
    for (int i = 0; i < 3; ++i) {
        const SplitData& a = *ds.splits()[static_cast<std::size_t>(i)];
        const SplitData& b = *back.splits()[static_cast<std::size_t>(i)];
        CHECK(a.name == b.name);
        CHECK(a.house_ids == b.house_ids);
        CHECK(a.videos == b.videos);
        CHECK(a.questions == b.questions);
    }
}

TEST_CASE("record file errors carry the line number") {
    fs::path dir = fresh_dir("lineno");
    write_dataset(small_dataset(), dir.string());
    fs::path questions = dir / "train" / "questions.jsonl";
    std::string text = slurp(questions);
    std::size_t first_newline = text.find('\n');
    REQUIRE(first_newline != std::string::npos);
    spit(questions, text.substr(0, first_newline + 1) + "{broken\n" +
                        text.substr(first_newline + 1));
    try {
        read_dataset(dir.string());
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("questions.jsonl:2:") != std::string::npos);
    }
}

TEST_CASE("unsupported format versions are rejected") {
    fs::path dir = fresh_dir("version");
    write_dataset(small_dataset(), dir.string());
    fs::path manifest = dir / "manifest.json";
    nlohmann::json j = nlohmann::json::parse(slurp(manifest));
    j["format_version"] = 99;
    spit(manifest, j.dump(2) + "\n");
    try {
        read_dataset(dir.string());
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("format_version") != std::string::npos);
    }
}

TEST_CASE("exec fixture and bindings files round-trip") {
    House h = two_room_house();
    h.objects = {make_object("o1", "sofa", "red", {"large"}, {2, 2}, "room-a")};
    ExecFixture fixture{h, gt_seeing_everything(h)};
    fs::path dir = fresh_dir("fixture");
    fs::path fixture_path = dir / "fixture.json";
    write_exec_fixture(fixture, fixture_path.string());
    ExecFixture back = read_exec_fixture(fixture_path.string());
    CHECK(back.house == fixture.house);
    CHECK(back.gt == fixture.gt);

    Bindings bindings;
    bindings.values = {{"attr", "red"}, {"obj_type", "sofa"}};
    bindings.set_members = {{{"attr", "red"}, {"obj_type", "sofa"}}};
    fs::path bindings_path = dir / "bindings.json";
    write_bindings_file(bindings, bindings_path.string());
    CHECK(read_bindings_file(bindings_path.string()) == bindings);

    CHECK_THROWS_AS(read_exec_fixture((dir / "missing.json").string()), IoError);
    CHECK_THROWS_AS(read_bindings_file((dir / "missing.json").string()), IoError);
}

TEST_CASE("validate_dataset passes a freshly written directory") {
    fs::path dir = fresh_dir("valid");
    write_dataset(small_dataset(), dir.string());
    CHECK(validate_dataset(dir.string()).empty());
}

TEST_CASE("validate_dataset flags a tampered answer") {
    fs::path dir = fresh_dir("tampered");
    write_dataset(small_dataset(), dir.string());
    fs::path questions = dir / "test" / "questions.jsonl";
    std::string text = slurp(questions);
    std::size_t first_newline = text.find('\n');
    REQUIRE(first_newline != std::string::npos);
    nlohmann::json j = nlohmann::json::parse(text.substr(0, first_newline));
    // Swap in a different word that is still inside the answer vocabulary so
    // only the re-execution check can catch it.
    j["answer"] = j["answer"].get<std::string>() == "yes" ? "no" : "yes";
    spit(questions, j.dump() + "\n" + text.substr(first_newline + 1));

    auto problems = validate_dataset(dir.string());
    REQUIRE_FALSE(problems.empty());
    bool reexec = false, digest = false;
    for (const std::string& p : problems) {
        if (p.find("does not re-execute") != std::string::npos) reexec = true;
        if (p.find("dataset_digest") != std::string::npos) digest = true;
    }
    CHECK(reexec);
    CHECK(digest);
}

TEST_CASE("validate_dataset reports unreadable directories as a violation") {
    auto problems = validate_dataset("/nonexistent/houseqa");
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("manifest.json") != std::string::npos);
}

TEST_CASE("cli gen, validate and audit cooperate") {
    fs::path dir = fresh_dir("cli");
    fs::path cfg_path = dir / "config.json";
    save_config(small_config(), cfg_path.string());
    fs::path out_a = dir / "ds_a";
    fs::path out_b = dir / "ds_b";

    CliResult gen_a = run_cli("gen --config " + cfg_path.string() + " --seed 5 --out " +
                              out_a.string());
    CHECK(gen_a.exit_code == 0);
    CHECK(gen_a.output.find("wrote " + out_a.string()) != std::string::npos);
    CHECK(gen_a.output.find("digest:") != std::string::npos);

    // Same seed via the environment override, serial pipeline: same digest.
    CliResult gen_b = run_cli("gen --config " + cfg_path.string() + " --serial --out " +
                                  out_b.string(),
                              "HOUSEQA_SEED=5 ");
    CHECK(gen_b.exit_code == 0);
    auto digest_of = [](const fs::path& d) {
        return nlohmann::json::parse(slurp(d / "manifest.json"))
            .at("dataset_digest")
            .get<std::string>();
    };
    CHECK(digest_of(out_a) == digest_of(out_b));

    CliResult ok = run_cli("validate " + out_a.string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("passes every check") != std::string::npos);

    CliResult audit = run_cli("audit --dataset " + out_a.string());
    CHECK(audit.exit_code == 0);
    CHECK(audit.output.find("binary fraction:") != std::string::npos);

    fs::path report = dir / "report.json";
    CliResult audit_out =
        run_cli("audit --dataset " + out_a.string() + " --report-out " + report.string());
    CHECK(audit_out.exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(report)).contains("binary_fraction"));

    // Tamper, then expect validate to fail with exit code 4.
    fs::path questions = out_a / "test" / "questions.jsonl";
    std::string text = slurp(questions);
    std::size_t nl = text.find('\n');
    nlohmann::json j = nlohmann::json::parse(text.substr(0, nl));
    j["answer"] = j["answer"].get<std::string>() == "yes" ? "no" : "yes";
    spit(questions, j.dump() + "\n" + text.substr(nl + 1));
    CliResult bad = run_cli("validate " + out_a.string());
    CHECK(bad.exit_code == 4);
    CHECK(bad.output.find("violation:") != std::string::npos);
}

TEST_CASE("cli exec answers a fixture question") {
    fs::path dir = fresh_dir("cli_exec");
    House h = two_room_house();
    h.objects = {make_object("o1", "sofa", "red", {"large"}, {2, 2}, "room-a")};
    fs::path fixture_path = dir / "fixture.json";
    write_exec_fixture({h, gt_seeing_everything(h)}, fixture_path.string());

    Bindings bindings;
    bindings.values = {{"attr", "red"}, {"obj_type", "sofa"}};
    fs::path bindings_path = dir / "bindings.json";
    write_bindings_file(bindings, bindings_path.string());

    CliResult yes = run_cli("exec --gt " + fixture_path.string() + " --template 16 --bindings " +
                            bindings_path.string());
    CHECK(yes.exit_code == 0);
    CHECK(yes.output == "Answer: yes\n");

    Bindings absent;
    absent.values = {{"attr", "purple"}, {"obj_type", "vase"}};
    write_bindings_file(absent, bindings_path.string());
    CliResult no = run_cli("exec --gt " + fixture_path.string() + " --template 16 --bindings " +
                           bindings_path.string());
    CHECK(no.exit_code == 0);
    CHECK(no.output == "Answer: no\n");

    CliResult unknown = run_cli("exec --gt " + fixture_path.string() +
                                " --template 999 --bindings " + bindings_path.string());
    CHECK(unknown.exit_code == 3);
}

TEST_CASE("cli oracle reports full agreement") {
    CliResult r = run_cli("oracle --n 5 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("5/5 agree") != std::string::npos);
}

TEST_CASE("cli usage and io failures use distinct exit codes") {
    CHECK(run_cli("gen --definitely-not-a-flag").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("audit --dataset /nonexistent/houseqa").exit_code == 2);
    fs::path dir = fresh_dir("cli_badcfg");
    spit(dir / "config.json", "{\"format_version\": 99}\n");
    CHECK(run_cli("gen --config " + (dir / "config.json").string() + " --out " +
                  (dir / "out").string())
              .exit_code == 3);
}
