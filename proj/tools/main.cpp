// Command line front end. Subcommands:
//   gen       synthesize houses, videos and questions into a dataset directory
//   audit     distribution statistics and question-only baselines for a dataset
//   exec      run one template's program against a stored scene fixture
//   oracle    agreement run between the executor and the enumeration oracle
//   validate  full invariant check of a dataset directory
//
// Exit codes: 0 success, 1 usage, 2 file/io problem, 3 config or schema
// problem, 4 failed validation or agreement.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "houseqa/audit.hpp"
#include "houseqa/config.hpp"
#include "houseqa/executor.hpp"
#include "houseqa/generator.hpp"
#include "houseqa/io.hpp"
#include "houseqa/oracle.hpp"
#include "houseqa/templates.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;
constexpr int kExitCheckFailed = 4;

struct GenArgs {
    std::string config_path;
    std::string out_dir = "dataset";
    std::uint64_t seed = 7;
    int houses = 0;
    int questions_per_video = 0;
    bool no_subsample = false;
    bool serial = false;
    int threads = 0;
    bool debug_render = false;
};

int run_gen(const GenArgs& args) {
    houseqa::EngineConfig cfg =
        args.config_path.empty() ? houseqa::default_config() : houseqa::load_config(args.config_path);
    if (args.houses > 0) cfg.houses = args.houses;
    if (args.questions_per_video > 0) cfg.quota.questions_per_video = args.questions_per_video;
    if (args.no_subsample) cfg.subsample = false;

    houseqa::GenOptions options;
    options.parallel = !args.serial;
    options.threads = args.threads;

    houseqa::Dataset ds = houseqa::build_dataset(cfg, args.seed, options);
    houseqa::DatasetManifest manifest = houseqa::write_dataset(ds, args.out_dir);

    if (args.debug_render) {
        for (const houseqa::House& house : ds.houses) {
            std::cout << house.id << "\n";
            for (const std::string& row : houseqa::ascii_grid(house, true)) {
                std::cout << row << "\n";
            }
            std::cout << "\n";
        }
    }
    std::cout << "wrote " << args.out_dir << "\n"
              << "  houses:    " << ds.houses.size() << " (train "
              << ds.train.house_ids.size() << ", validation "
              << ds.validation.house_ids.size() << ", test " << ds.test.house_ids.size()
              << ")\n"
              << "  videos:    "
              << ds.train.videos.size() + ds.validation.videos.size() + ds.test.videos.size()
              << "\n"
              << "  questions: " << ds.total_questions() << "\n"
              << "  digest:    " << manifest.dataset_digest << "\n";
    return kExitOk;
}

int run_audit(const std::string& dataset_dir, const std::string& report_out) {
    houseqa::Dataset ds = houseqa::read_dataset(dataset_dir);
    houseqa::AuditReport report = houseqa::audit_dataset(ds);
    std::cout << houseqa::report_table(report);
    if (!report_out.empty()) {
        std::ofstream out(report_out);
        if (!out) throw houseqa::IoError("cannot write " + report_out);
        out << houseqa::report_to_json(report) << "\n";
        std::cout << "report written to " << report_out << "\n";
    }
    return kExitOk;
}

int run_exec(const std::string& gt_path, int template_id, const std::string& bindings_path) {
    houseqa::ExecFixture fixture = houseqa::read_exec_fixture(gt_path);
    const houseqa::QuestionTemplate* tmpl = nullptr;
    try {
        tmpl = &houseqa::template_by_id(template_id);
    } catch (const std::out_of_range&) {
        std::cerr << "unknown template id " << template_id << "\n";
        return kExitConfig;
    }
    houseqa::Bindings bindings = houseqa::read_bindings_file(bindings_path);
    auto answer = houseqa::execute(tmpl->program, bindings, fixture.house, fixture.gt);
    if (answer) {
        std::cout << "Answer: " << *answer << "\n";
    } else {
        std::cout << "Invalid\n";
    }
    return kExitOk;
}

int run_oracle(std::uint64_t seed, int scenarios) {
    houseqa::AgreementResult result = houseqa::run_oracle_agreement(seed, scenarios);
    std::cout << result.scenarios_agreed << "/" << result.scenarios << " agree ("
              << result.checks_agreed << "/" << result.checks << " template checks)\n";
    if (result.all_agree()) return kExitOk;
    for (const houseqa::OracleMismatch& m : result.mismatches) {
        std::cerr << "mismatch: scenario " << m.scenario << ", template " << m.template_id
                  << ": " << m.detail << "\n";
    }
    return kExitCheckFailed;
}

int run_validate(const std::string& dataset_dir) {
    auto problems = houseqa::validate_dataset(dataset_dir);
    if (problems.empty()) {
        std::cout << "ok: " << dataset_dir << " passes every check\n";
        return kExitOk;
    }
    for (const std::string& p : problems) std::cout << "violation: " << p << "\n";
    std::cout << problems.size() << " violation(s)\n";
    return kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic indoor-navigation video QA dataset toolkit"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a dataset directory");
    gen->add_option("--config", gen_args.config_path, "Engine config JSON (defaults built in)");
    gen->add_option("--seed", gen_args.seed, "Master seed")->envname("HOUSEQA_SEED");
    gen->add_option("--houses", gen_args.houses, "Override number of houses");
    gen->add_option("--out", gen_args.out_dir, "Output directory")->envname("HOUSEQA_OUT");
    gen->add_option("--questions-per-video", gen_args.questions_per_video,
                    "Override questions per video");
    gen->add_flag("--no-subsample", gen_args.no_subsample, "Keep every frame, skip 1-in-4 picks");
    gen->add_flag("--serial", gen_args.serial, "Use the serial reference pipeline");
    gen->add_option("--threads", gen_args.threads, "Worker threads (0 = library default)");
    gen->add_flag("--debug-render", gen_args.debug_render, "Print ASCII maps of the houses");

    std::string audit_dir;
    std::string report_out;
    CLI::App* audit = app.add_subcommand("audit", "Report dataset statistics and baselines");
    audit->add_option("--dataset", audit_dir, "Dataset directory")->required();
    audit->add_option("--report-out", report_out, "Write the full report as JSON here");

    std::string exec_gt;
    int exec_template = 0;
    std::string exec_bindings;
    CLI::App* exec = app.add_subcommand("exec", "Execute one question program on a fixture");
    exec->add_option("--gt", exec_gt, "Scene fixture JSON (house plus video ground truth)")
        ->required();
    exec->add_option("--template", exec_template, "Template id (1-28)")->required();
    exec->add_option("--bindings", exec_bindings, "Bindings JSON")->required();

    std::uint64_t oracle_seed = 7;
    int oracle_n = 1000;
    CLI::App* oracle = app.add_subcommand("oracle", "Executor vs. enumeration oracle agreement");
    oracle->add_option("--n", oracle_n, "Number of random scenarios");
    oracle->add_option("--seed", oracle_seed, "Scenario seed")->envname("HOUSEQA_SEED");

    std::string validate_dir;
    CLI::App* validate = app.add_subcommand("validate", "Check every dataset invariant");
    validate->add_option("dir", validate_dir, "Dataset directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (audit->parsed()) return run_audit(audit_dir, report_out);
        if (exec->parsed()) return run_exec(exec_gt, exec_template, exec_bindings);
        if (oracle->parsed()) return run_oracle(oracle_seed, oracle_n);
        if (validate->parsed()) return run_validate(validate_dir);
    } catch (const houseqa::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const houseqa::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitUsage;
}
