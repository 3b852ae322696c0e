// learnersim: command-line front end for the year-long learner simulation.

#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsim/agents/backend.hpp"
#include "lsim/agents/templates.hpp"
#include "lsim/analytics/report.hpp"
#include "lsim/corpus/question_bank.hpp"
#include "lsim/corpus/trap_gen.hpp"
#include "lsim/corpus/validation.hpp"
#include "lsim/engine/config.hpp"
#include "lsim/engine/engine.hpp"
#include "lsim/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_result(const lsim::engine::RunResult& r) {
    std::cout << r.run_dir.string() << ": " << (r.completed ? "completed" : "stopped")
              << ", last checkpoint month " << r.last_checkpoint << "\n";
    if (!r.notice.empty()) std::cout << r.notice << "\n";
}

json backend_for(const std::string& type, const std::optional<fs::path>& config_file) {
    json b = {{"type", type}};
    if (config_file) {
        auto cfg = lsim::engine::RunConfig::load(*config_file);
        if (cfg.backend.value("type", "") == type) b = cfg.backend;
    }
    return b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate four learner personas, a teacher and peer debates over a school year."};
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "Check a corpus directory and list every violation");
    std::string validate_corpus;
    validate->add_option("corpus", validate_corpus, "Corpus directory")->required();

    // run
    auto* run = app.add_subcommand("run", "Run the simulation for each configured seed");
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::string backend;
    std::optional<int> months;
    std::string out_dir;
    std::optional<int> stop_after;
    bool serial = false;
    run->add_option("--config", config_file, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Run only this seed, overriding the config");
    run->add_option("--backend", backend, "Backend type; http settings are taken from the config when present")
        ->check(CLI::IsMember({"scripted", "http"}));
    run->add_option("--months", months, "Number of months to simulate (1-12)")->check(CLI::Range(1, 12));
    run->add_option("--out", out_dir, "Output directory; runs go to <out>/seed-<N>");
    run->add_option("--stop-after-month", stop_after,
                    "Stop after this month's checkpoint (0 = after the initial exam); continue with resume")
        ->check(CLI::Range(0, 12));
    run->add_flag("--serial", serial, "Run learner tasks on one thread");

    // resume
    auto* resume = app.add_subcommand("resume", "Continue an interrupted run from its latest checkpoint");
    std::string resume_dir;
    std::optional<int> resume_stop;
    resume->add_option("run_dir", resume_dir, "Run directory (contains events.jsonl)")->required();
    resume->add_option("--stop-after-month", resume_stop, "Stop again after this month's checkpoint")
        ->check(CLI::Range(0, 12));

    // report
    auto* report = app.add_subcommand("report", "Rebuild <run_dir>/report from the event log");
    std::string report_dir;
    report->add_option("run_dir", report_dir, "Run directory (contains events.jsonl)")->required();

    // trap-gen
    auto* trap = app.add_subcommand("trap-gen", "Draft trap questions for weekly sources; drafts need review");
    std::string trap_corpus;
    std::vector<std::string> sources;
    std::string trap_backend = "scripted";
    std::optional<std::string> trap_config;
    std::uint64_t trap_seed = 0;
    std::string trap_out;
    trap->add_option("--corpus", trap_corpus, "Corpus directory")->required();
    trap->add_option("--sources", sources, "Source question ids (comma separated)")->required()->delimiter(',');
    trap->add_option("--backend", trap_backend, "Backend type")->check(CLI::IsMember({"scripted", "http"}));
    trap->add_option("--config", trap_config, "Run configuration holding the backend settings")
        ->check(CLI::ExistingFile);
    trap->add_option("--seed", trap_seed, "Seed for the scripted backend");
    trap->add_option("--out", trap_out, "Write drafts to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            auto bank = lsim::corpus::load_question_bank(validate_corpus);
            auto rep = lsim::corpus::validate_bank(bank);
            for (const auto& v : rep.violations) {
                std::cout << v.code << (v.question_id ? " [" + *v.question_id + "]" : "") << ": " << v.message
                          << "\n";
            }
            std::cout << (rep.is_valid ? "valid" : "invalid") << ": " << bank.questions.size() << " questions, "
                      << rep.violations.size() << " violations\n";
            return rep.is_valid ? 0 : 1;
        }
        if (*run) {
            auto cfg = lsim::engine::RunConfig::load(config_file);
            if (seed) {
                cfg.seed = *seed;
                cfg.seeds.clear();
            }
            if (!backend.empty() && cfg.backend.value("type", "") != backend) cfg.backend = {{"type", backend}};
            if (months) cfg.months = *months;
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (serial) cfg.parallel = false;
            lsim::engine::RunOptions opt;
            opt.stop_after_month = stop_after;
            for (const auto& r : lsim::engine::run_all(cfg, opt)) print_result(r);
            return 0;
        }
        if (*resume) {
            lsim::engine::RunOptions opt;
            opt.stop_after_month = resume_stop;
            print_result(lsim::engine::resume(resume_dir, opt));
            return 0;
        }
        if (*report) {
            if (!fs::exists(fs::path(report_dir) / "events.jsonl")) {
                std::cerr << "error: no events.jsonl in " << report_dir << "\n";
                return 2;
            }
            lsim::analytics::build_report(report_dir);
            std::cout << (fs::path(report_dir) / "report").string() << "\n";
            return 0;
        }
        if (*trap) {
            auto bank = std::make_shared<lsim::corpus::QuestionBank>(lsim::corpus::load_question_bank(trap_corpus));
            std::optional<fs::path> cfg_path;
            if (trap_config) cfg_path = *trap_config;
            auto be = lsim::agents::make_backend(backend_for(trap_backend, cfg_path), bank, trap_seed);
            auto drafts = lsim::corpus::generate_trap_candidates(*bank, sources, *be,
                                                                 lsim::agents::TemplateLibrary::builtin());
            json out = json::array();
            for (const auto& d : drafts) out.push_back(lsim::corpus::to_json(d));
            if (trap_out.empty()) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::ofstream(trap_out) << out.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const lsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
