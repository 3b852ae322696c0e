#include "lsim/engine/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <thread>

#include "lsim/agents/backend.hpp"
#include "lsim/agents/learner.hpp"
#include "lsim/agents/profiles.hpp"
#include "lsim/agents/teacher.hpp"
#include "lsim/analytics/report.hpp"
#include "lsim/assess/grading.hpp"
#include "lsim/corpus/exam.hpp"
#include "lsim/corpus/validation.hpp"
#include "lsim/debate/debate.hpp"
#include "lsim/engine/events.hpp"
#include "lsim/engine/run_state.hpp"
#include "lsim/error.hpp"
#include "lsim/memory/retrieval.hpp"
#include "lsim/util/files.hpp"
#include "lsim/util/rng.hpp"
#include "lsim/util/text.hpp"

namespace lsim::engine {

using nlohmann::json;
namespace fs = std::filesystem;
using memory::EntryKind;

namespace {

std::string two_digits(int v) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02d", v);
    return buf;
}

std::string corpus_digest(const corpus::QuestionBank& bank) {
    json j = {{"knowledge_points", json::array()}, {"questions", json::array()}, {"anchor", bank.anchor_ids}};
    for (const auto& kp : bank.knowledge_points) j["knowledge_points"].push_back(corpus::to_json(kp));
    for (const auto& q : bank.questions) j["questions"].push_back(corpus::to_json(q));
    return rng::digest_hex(j.dump());
}

std::vector<std::string> canonical_order(const std::vector<std::string>& learners) {
    std::vector<std::string> out;
    for (auto id : agents::all_learners()) {
        auto name = std::string(agents::to_string(id));
        if (std::find(learners.begin(), learners.end(), name) != learners.end()) out.push_back(name);
    }
    return out;
}

void write_json(const fs::path& p, const json& j) {
    fs::create_directories(p.parent_path());
    files::write_file_atomic(p, j.dump(1) + "\n");
}

class Engine {
  public:
    Engine(RunConfig cfg, std::uint64_t seed, fs::path dir)
        : cfg_(std::move(cfg)), seed_(seed), dir_(std::move(dir)), sink_(*this) {
        cfg_.seed = seed_;
        cfg_.seeds.clear();
        auto bank = std::make_shared<corpus::QuestionBank>(corpus::load_question_bank(cfg_.corpus_path));
        auto report = corpus::validate_bank(*bank);
        if (!report.is_valid) {
            std::string msg = "corpus at " + cfg_.corpus_path.string() + " is invalid:";
            for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
                msg += "\n  " + report.violations[i].code + ": " + report.violations[i].message;
            }
            throw Error(msg);
        }
        bank_ = bank;
        templates_ = cfg_.templates_dir ? agents::TemplateLibrary::load(*cfg_.templates_dir)
                                        : agents::TemplateLibrary::builtin();
        backend_ = agents::make_backend(cfg_.backend, bank_, seed_);
        learners_ = canonical_order(cfg_.learners);
        state_ = RunState(learners_, static_cast<std::size_t>(cfg_.k));
        corpus_digest_ = corpus_digest(*bank_);
        config_hash_ = rng::digest_hex(json{{"identity", cfg_.identity()}, {"corpus", corpus_digest_}}.dump());
    }

    void start_fresh() {
        fs::create_directories(dir_);
        for (const char* sub : {"checkpoints", "grades", "debates", "memory", "report"}) fs::remove_all(dir_ / sub);
        fs::create_directories(dir_ / "checkpoints");
        json stored = cfg_.to_json();
        stored["corpus_path"] = fs::absolute(cfg_.corpus_path).lexically_normal().string();
        stored["output_dir"] = fs::absolute(dir_.parent_path()).lexically_normal().string();
        if (cfg_.templates_dir) stored["templates_dir"] = fs::absolute(*cfg_.templates_dir).string();
        write_json(dir_ / "config.json", stored);
        log_ = EventLog::create(dir_ / "events.jsonl");

        json learners = json::array();
        for (const auto& l : learners_) {
            const auto& p = agents::builtin_profile(*agents::parse_learner_id(l));
            learners.push_back({{"learner_id", l},
                                {"display_name", p.display_name},
                                {"motivation", agents::to_string(p.motivation)},
                                {"initial_self_concept",
                                 p.initial_self_concept ? json(*p.initial_self_concept) : json(nullptr)},
                                {"dev_strategy", agents::to_string(p.dev_strategy)}});
        }
        clock_ = {0, 0, "setup", 0};
        emit("run_started", {{"identity", cfg_.identity()},
                             {"config_hash", config_hash_},
                             {"corpus_digest", corpus_digest_},
                             {"backend", backend_->describe()},
                             {"learners", learners}});
    }

    /// Verify the latest checkpoint, cut the log back to it and fold it.
    /// Returns false when the run had already completed.
    bool start_resume() {
        const auto log_path = dir_ / "events.jsonl";
        if (!fs::exists(log_path)) throw Error("no event log in " + dir_.string());
        auto lines = files::read_lines(log_path);
        std::vector<Event> events;
        events.reserve(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            try {
                events.push_back(event_from_json(json::parse(lines[i])));
            } catch (const std::exception& e) {
                throw ParseError(log_path.string(), static_cast<long>(i + 1), "", e.what());
            }
        }
        if (!events.empty() && events.back().kind == "run_completed") return false;

        std::optional<json> cp;
        int cp_month = -1;
        if (fs::exists(dir_ / "checkpoints")) {
            for (const auto& f : fs::directory_iterator(dir_ / "checkpoints")) {
                auto j = json::parse(files::read_file(f.path()));
                if (j.at("month").get<int>() > cp_month) {
                    cp_month = j["month"].get<int>();
                    cp = j;
                }
            }
        }
        if (!cp) throw Error("refusing to resume " + dir_.string() + ": no checkpoint");
        if (cp->at("config_hash").get<std::string>() != config_hash_) {
            throw Error("refusing to resume " + dir_.string() + ": config.json or the corpus differs from the run");
        }
        const auto seq = cp->at("seq").get<std::size_t>();
        if (seq == 0 || seq > events.size() || events[seq - 1].kind != "checkpoint" ||
            events[seq - 1].payload.at("month").get<int>() != cp_month) {
            throw Error("refusing to resume " + dir_.string() + ": checkpoint does not match the event log");
        }
        char hex[20];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest_lines(lines, seq - 1)));
        if (cp->at("log_digest").get<std::string>() != hex) {
            throw Error("refusing to resume " + dir_.string() + ": event log digest differs from the checkpoint");
        }
        for (std::size_t i = 0; i < seq; ++i) state_.apply(events[i]);
        lines.resize(seq);
        log_ = EventLog::reopen(log_path, lines);
        return true;
    }

    RunResult execute(const RunOptions& opt) {
        RunResult r;
        r.run_dir = dir_;
        try {
            int next = state_.completed_month + 1;
            if (next == 0) {
                initial_exam();
                checkpoint(0);
                next = 1;
                if (opt.stop_after_month == 0) return stop(r, opt);
            }
            for (int m = next; m <= cfg_.months; ++m) {
                month(m);
                checkpoint(m);
                if (opt.stop_after_month == m && m < cfg_.months) return stop(r, opt);
            }
            if (cfg_.months == kYear) year_end();
            clock_ = {cfg_.months, 4, "done", 0};
            emit("run_completed", {{"months", cfg_.months}});
            log_.flush();
        } catch (const std::exception& e) {
            emit("run_aborted", {{"error", e.what()}});
            log_.flush();
            throw;
        }
        r.completed = true;
        r.last_checkpoint = state_.completed_month;
        if (opt.build_report) analytics::build_report(dir_);
        return r;
    }

  private:
    static constexpr int kYear = corpus::kMonths;

    struct LogSink : agents::EventSink {
        explicit LogSink(Engine& e) : engine(e) {}
        void emit(std::string kind, json payload) override { engine.emit(std::move(kind), std::move(payload)); }
        Engine& engine;
    };

    void emit(std::string kind, json payload) { log_.append(std::move(kind), std::move(payload), clock_); }

    RunResult stop(RunResult& r, const RunOptions& opt) {
        log_.flush();
        r.completed = false;
        r.last_checkpoint = state_.completed_month;
        r.notice = "stopped after month " + std::to_string(state_.completed_month);
        if (opt.build_report) analytics::build_report(dir_);
        return r;
    }

    agents::AgentContext ctx_for(const std::string& id, agents::EventSink* sink) {
        agents::AgentContext c;
        c.backend = backend_.get();
        c.templates = &templates_;
        c.sink = sink;
        c.now = clock_;
        c.short_term = &state_.short_term.at(id);
        if (id == "teacher") {
            c.agent_id = "teacher";
            c.agent_role = "teacher";
            c.display_name = "Teacher";
            c.profile_prompt = agents::teacher_profile_prompt();
        } else {
            const auto& p = agents::builtin_profile(*agents::parse_learner_id(id));
            c.agent_id = id;
            c.agent_role = "learner";
            c.display_name = p.display_name;
            c.profile_prompt = p.profile_prompt;
            c.long_term = &state_.long_term.at(id);
        }
        return c;
    }

    /// Run fn(index, ctx) for every learner; study and exam phases may use threads.
    /// Each task writes only its own learner's memories; events are appended
    /// afterwards in learner order, so the log never depends on scheduling.
    template <class F>
    auto fan_out(F&& fn, bool concurrent = false) {
        using R = decltype(fn(std::size_t{}, std::declval<agents::AgentContext&>()));
        const std::size_t n = learners_.size();
        std::vector<agents::CollectingSink> sinks(n);
        std::vector<std::optional<R>> results(n);
        std::vector<std::exception_ptr> errors(n);
        auto task = [&](std::size_t i) {
            try {
                auto ctx = ctx_for(learners_[i], &sinks[i]);
                results[i] = fn(i, ctx);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        };
        if (concurrent && cfg_.parallel && n > 1) {
            std::vector<std::thread> threads;
            for (std::size_t i = 0; i < n; ++i) threads.emplace_back(task, i);
            for (auto& t : threads) t.join();
        } else {
            for (std::size_t i = 0; i < n; ++i) task(i);
        }
        for (auto& s : sinks) {
            for (auto& [kind, payload] : s.events) emit(std::move(kind), std::move(payload));
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        std::vector<R> out;
        for (auto& r : results) out.push_back(std::move(*r));
        return out;
    }

    corpus::Exam issue(corpus::ExamKind kind, std::optional<int> month, std::optional<int> week) {
        auto exam = corpus::assemble_exam(*bank_, kind, month, week, seed_);
        emit("exam_issued", corpus::to_json(exam));
        return exam;
    }

    std::vector<assess::GradedAttempt> grade_all(const corpus::Exam& exam,
                                                 const std::vector<std::vector<assess::GivenAnswer>>& answers,
                                                 bool keep_answers) {
        std::vector<assess::GradedAttempt> out;
        for (std::size_t i = 0; i < learners_.size(); ++i) {
            const auto& l = learners_[i];
            auto g = assess::grade(answers[i], exam, *bank_, l);
            json flags = json::array();
            if (exam.kind == corpus::ExamKind::monthly) {
                for (const auto& f : assess::trap_diagnosis(g, *bank_)) {
                    flags.push_back({{"trap_id", f.trap_id},
                                     {"source_id", f.source_id},
                                     {"gave_stale_source_answer", f.gave_stale_source_answer}});
                }
            }
            json attempt = assess::to_json(g);
            write_json(dir_ / "grades" / exam.exam_id / (l + ".json"), {{"attempt", attempt}, {"trap_flags", flags}});
            emit("exam_graded", {{"learner", l},
                                 {"exam_id", exam.exam_id},
                                 {"exam_kind", corpus::to_string(exam.kind)},
                                 {"month", exam.month.value_or(clock_.month)},
                                 {"week", exam.week.value_or(0)},
                                 {"attempt", std::move(attempt)},
                                 {"trap_flags", std::move(flags)}});
            auto ctx = ctx_for(l, &sink_);
            const int month = exam.month.value_or(clock_.month);
            if (keep_answers) {
                for (const auto& it : g.items) {
                    memory::MemoryEntry e;
                    e.kind = EntryKind::exam_answer;
                    e.month = month;
                    e.payload = {{"exam_id", exam.exam_id},
                                 {"question_id", it.question_id},
                                 {"stem", bank_->at(it.question_id).stem},
                                 {"answer", it.given}};
                    agents::remember(ctx, std::move(e));
                }
            }
            memory::MemoryEntry s;
            s.kind = EntryKind::score_record;
            s.month = month;
            s.week = exam.week;
            s.payload = {{"exam_id", exam.exam_id},
                         {"exam_kind", corpus::to_string(exam.kind)},
                         {"learner", l},
                         {"score", g.score}};
            agents::remember(ctx, std::move(s));
            out.push_back(std::move(g));
        }
        return out;
    }

    void initial_exam() {
        clock_ = {0, 0, "initial_exam", 0};
        auto exam = issue(corpus::ExamKind::initial, std::nullopt, std::nullopt);
        // No memories exist yet: the initial exam is taken with an empty bundle.
        auto answers = fan_out([&](std::size_t, agents::AgentContext& ctx) {
            return agents::take_exam(ctx, exam, *bank_, {{0, "initial"}, {1, "(none)"}, {2, "(none)"}});
        }, true);
        grade_all(exam, answers, true);
    }

    static std::string weekly_results(const std::vector<assess::GradedAttempt>& weeks,
                                      const corpus::QuestionBank& bank) {
        constexpr std::size_t kMaxMistakesShown = 8;
        std::string out;
        int w = 0;
        for (const auto& g : weeks) {
            if (!out.empty()) out += "\n\n";
            out += "Week " + std::to_string(++w) + " test: score " + text::fixed(g.score, 1) + "/100.";
            std::size_t shown = 0;
            for (const auto& it : g.items) {
                if (it.correct || shown == kMaxMistakesShown) continue;
                ++shown;
                const auto& q = bank.at(it.question_id);
                out += "\nMissed: " + q.stem + " | your answer: '" + it.given + "' | correct: '" + q.answer_key + "'";
            }
        }
        return out;
    }

    void month(int m) {
        std::vector<std::vector<assess::GradedAttempt>> weekly(learners_.size());
        auto teacher = ctx_for("teacher", &sink_);

        for (int w = 1; w <= corpus::kTeachingWeeks; ++w) {
            const auto* kp = bank_->knowledge_point(m, w);
            if (!kp) throw Error("no knowledge point for month " + std::to_string(m) + " week " + std::to_string(w));

            clock_ = {m, w, "teach", 0};
            teacher.now = clock_;
            const auto lesson = agents::teach(teacher, *kp);

            clock_.phase = "study";
            fan_out(
                [&](std::size_t, agents::AgentContext& ctx) { return agents::study(ctx, *kp, lesson); }, true);

            clock_.phase = "weekly_test";
            auto exam = issue(corpus::ExamKind::weekly, m, w);
            auto answers = fan_out([&](std::size_t i, agents::AgentContext& ctx) {
                memory::RetrievalContext rc;
                rc.learner = learners_[i];
                rc.month = m;
                rc.week = w;
                auto bundle = memory::retrieve(*ctx.long_term, memory::Stage::weekly_learning, rc);
                // this week's study notes were taken before the test
                for (auto it = ctx.long_term->entries().rbegin(); it != ctx.long_term->entries().rend(); ++it) {
                    if (it->kind == EntryKind::knowledge_summary && it->month == m && it->week == w) {
                        bundle.entries.push_back(*it);
                        break;
                    }
                }
                const auto review = memory::render_entries(bundle.entries);
                return agents::take_exam(ctx, exam, *bank_,
                                         {{0, std::to_string(m)}, {1, std::to_string(w)}, {2, review}});
            }, true);
            auto graded = grade_all(exam, answers, false);
            for (std::size_t i = 0; i < graded.size(); ++i) weekly[i].push_back(std::move(graded[i]));

            clock_.phase = "explain";
            teacher.now = clock_;
            int batch = 0;
            for (std::size_t b = 0; b < exam.items.size(); b += agents::kBatchSize) {
                ++batch;
                std::vector<const corpus::Question*> qs;
                for (std::size_t i = b; i < std::min(exam.items.size(), b + agents::kBatchSize); ++i) {
                    qs.push_back(&bank_->at(exam.items[i].question_id));
                }
                const auto text = agents::explain(teacher, m, w, batch, qs);
                for (const auto& l : learners_) {
                    auto ctx = ctx_for(l, &sink_);
                    memory::MemoryEntry e;
                    e.kind = EntryKind::teacher_feedback;
                    e.month = m;
                    e.week = w;
                    e.payload = {{"text", text}, {"batch", batch}};
                    agents::remember(ctx, std::move(e));
                }
            }
        }

        clock_ = {m, 3, "choice_consolidation", 0};
        fan_out([&](std::size_t, agents::AgentContext& ctx) {
            std::vector<memory::MemoryEntry> notes;
            for (const auto& e : ctx.long_term->entries()) {
                if (e.kind == EntryKind::knowledge_summary && e.month == m && e.week) notes.push_back(e);
            }
            return agents::strategic_choice(ctx, agents::ChoiceKind::consolidation, m, memory::render_entries(notes));
        });

        clock_.phase = "choice_reflection";
        fan_out([&](std::size_t i, agents::AgentContext& ctx) {
            return agents::strategic_choice(ctx, agents::ChoiceKind::reflection, m, weekly_results(weekly[i], *bank_));
        });

        clock_ = {m, 4, "choice_pre_review", 0};
        auto reviews = fan_out([&](std::size_t, agents::AgentContext& ctx) {
            auto c = agents::strategic_choice(ctx, agents::ChoiceKind::pre_exam_review, m, "");
            if (c.decision != agents::Decision::work) return std::string();
            std::vector<memory::MemoryEntry> mats;
            for (const auto& e : ctx.long_term->entries()) {
                if ((e.kind == EntryKind::knowledge_summary || e.kind == EntryKind::reflection) && e.month == m) {
                    mats.push_back(e);
                }
            }
            return agents::pre_exam_review(ctx, m, memory::render_entries(mats));
        });

        clock_.phase = "monthly_exam";
        auto exam = issue(corpus::ExamKind::monthly, m, std::nullopt);
        auto answers = fan_out([&](std::size_t i, agents::AgentContext& ctx) {
            memory::RetrievalContext rc;
            rc.learner = learners_[i];
            rc.month = m;
            auto bundle = memory::retrieve(*ctx.long_term, memory::Stage::monthly_exam, rc);
            std::vector<memory::MemoryEntry> knowledge, reflections;
            for (const auto& e : bundle.entries) {
                (e.kind == EntryKind::knowledge_summary || e.kind == EntryKind::teacher_feedback ? knowledge
                                                                                                  : reflections)
                    .push_back(e);
            }
            auto slot1 = memory::render_entries(knowledge);
            if (!reviews[i].empty()) slot1 += "\n[Month " + std::to_string(m) + "] Pre-exam review: " + reviews[i];
            return agents::take_exam(ctx, exam, *bank_,
                                     {{0, std::to_string(m)}, {1, slot1}, {2, memory::render_entries(reflections)}});
        }, true);
        auto graded = grade_all(exam, answers, true);

        clock_.phase = "debates";
        auto disputes = debate::find_disagreements(exam, graded, cfg_.debate_cap, seed_);
        int n = 0;
        for (const auto& d : disputes) {
            clock_.step = ++n;
            auto a = ctx_for(d.a, &sink_);
            auto b = ctx_for(d.b, &sink_);
            auto mod = ctx_for("teacher", &sink_);
            auto idx = [&](const std::string& l) {
                return static_cast<std::size_t>(std::find(learners_.begin(), learners_.end(), l) - learners_.begin());
            };
            const auto pos = static_cast<std::size_t>(
                std::find_if(exam.items.begin(), exam.items.end(),
                             [&](const corpus::ExamItem& it) { return it.question_id == d.question_id; }) -
                exam.items.begin());
            const auto& ga = graded[idx(d.a)].items[pos];
            const auto& gb = graded[idx(d.b)].items[pos];
            debate::DebateSetup setup{"m" + two_digits(m) + "-d" + std::to_string(1000 + n).substr(1), m,
                                      &bank_->at(d.question_id), cfg_.k_d};
            auto t = debate::run_debate(setup, {&a, ga.given, ga.reasoning}, {&b, gb.given, gb.reasoning}, mod);
            write_json(dir_ / "debates" / (t.debate_id + ".json"), debate::to_json(t));
        }
        clock_.step = 0;

        clock_.phase = "self_concept";
        std::vector<std::vector<memory::MemoryEntry>> peer_scores(learners_.size());
        for (std::size_t i = 0; i < learners_.size(); ++i) {
            for (std::size_t j = 0; j < learners_.size(); ++j) {
                if (i == j) continue;
                for (const auto& e : state_.long_term.at(learners_[j]).entries()) {
                    if (e.kind == EntryKind::score_record && e.payload.value("exam_kind", "") == "monthly") {
                        peer_scores[i].push_back(e);
                    }
                }
            }
        }
        fan_out([&](std::size_t i, agents::AgentContext& ctx) {
            memory::RetrievalContext rc;
            rc.learner = learners_[i];
            rc.month = m;
            rc.peer_scores = peer_scores[i];
            auto bundle = memory::retrieve(*ctx.long_term, memory::Stage::self_concept_eval, rc);
            const auto& p = agents::builtin_profile(*agents::parse_learner_id(learners_[i]));
            return agents::update_self_concept(ctx, m, bundle, p.initial_self_concept);
        });
    }

    void year_end() {
        clock_ = {kYear, 4, "year_consolidation", 0};
        for (const auto& l : learners_) {
            auto entry = memory::consolidate_year(state_.long_term.at(l), l, clock_);
            emit("memory_store", {{"learner", l}, {"entry", memory::to_json(entry)}});
            emit("consolidation", {{"learner", l}, {"entry_id", entry.entry_id}});
        }
        clock_.phase = "final_exam";
        auto exam = issue(corpus::ExamKind::final, std::nullopt, std::nullopt);
        auto answers = fan_out([&](std::size_t i, agents::AgentContext& ctx) {
            memory::RetrievalContext rc;
            rc.learner = learners_[i];
            rc.month = kYear;
            auto bundle = memory::retrieve(*ctx.long_term, memory::Stage::final_exam, rc);
            return agents::take_exam(ctx, exam, *bank_, {{0, "final"}, {1, bundle.rendered}, {2, "(none)"}});
        }, true);
        grade_all(exam, answers, false);
    }

    void checkpoint(int m) {
        clock_ = {m, m == 0 ? 0 : 4, "checkpoint", 0};
        const auto digest = log_.digest();
        const auto seq = emit_seq("checkpoint", {{"month", m}, {"config_hash", config_hash_}});
        state_.completed_month = m;
        log_.flush();
        char hex[20];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
        for (const auto& l : learners_) {
            fs::create_directories(dir_ / "memory");
            files::write_file_atomic(dir_ / "memory" / (l + ".jsonl"), state_.long_term.at(l).dump_jsonl());
        }
        write_json(dir_ / "checkpoints" / ("month_" + two_digits(m) + ".json"),
                   {{"month", m}, {"seq", seq}, {"log_digest", hex}, {"config_hash", config_hash_}});
    }

    std::uint64_t emit_seq(std::string kind, json payload) {
        return log_.append(std::move(kind), std::move(payload), clock_);
    }

    RunConfig cfg_;
    std::uint64_t seed_;
    fs::path dir_;
    std::shared_ptr<const corpus::QuestionBank> bank_;
    agents::TemplateLibrary templates_;
    std::unique_ptr<agents::Backend> backend_;
    std::vector<std::string> learners_;
    RunState state_;
    EventLog log_;
    SimTime clock_;
    LogSink sink_;
    std::string corpus_digest_;
    std::string config_hash_;
};

}  // namespace

RunResult run(const RunConfig& config, std::uint64_t seed, const RunOptions& options) {
    config.validate();
    Engine e(config, seed, config.run_dir_for(seed));
    e.start_fresh();
    return e.execute(options);
}

std::vector<RunResult> run_all(const RunConfig& config, const RunOptions& options) {
    std::vector<RunResult> out;
    for (auto s : config.all_seeds()) out.push_back(run(config, s, options));
    return out;
}

RunResult resume(const fs::path& run_dir, const RunOptions& options) {
    auto cfg = RunConfig::load(run_dir / "config.json");
    Engine e(cfg, cfg.seed, run_dir);
    if (!e.start_resume()) {
        RunResult r;
        r.run_dir = run_dir;
        r.completed = true;
        r.last_checkpoint = cfg.months;
        r.notice = "run already completed; nothing to resume";
        return r;
    }
    return e.execute(options);
}

}  // namespace lsim::engine
