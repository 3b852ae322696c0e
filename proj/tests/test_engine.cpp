#include <map>

#include "doctest.h"
#include "lsim/engine/config.hpp"
#include "lsim/engine/engine.hpp"
#include "lsim/engine/events.hpp"
#include "lsim/engine/run_state.hpp"
#include "support.hpp"

using namespace lsim;
using namespace lsim::engine;
namespace lt = lsim::testing;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int phase_rank(const std::string& p) {
    static const std::vector<std::string> order = {"teach",       "study",        "weekly_test",
                                                   "explain",     "choice_consolidation", "choice_reflection",
                                                   "choice_pre_review", "monthly_exam", "debates",
                                                   "self_concept", "checkpoint"};
    auto it = std::find(order.begin(), order.end(), p);
    return it == order.end() ? -1 : static_cast<int>(it - order.begin());
}

std::map<std::string, int> census(const std::vector<Event>& ev, int month) {
    std::map<std::string, int> n;
    for (const auto& e : ev) {
        if (e.timestamp.month == month && e.timestamp.phase != "setup") ++n[e.kind];
    }
    return n;
}

void tamper_line(const fs::path& log, std::size_t line_no) {
    std::ifstream in(log);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    in.close();
    auto& l = lines.at(line_no);
    auto pos = l.find("\"phase\"");
    REQUIRE(pos != std::string::npos);
    l.insert(pos, " ");
    std::ofstream out(log, std::ios::trunc);
    for (const auto& x : lines) out << x << '\n';
}

}  // namespace

TEST_SUITE("engine") {
    TEST_CASE("two-month census and phase order") {
        lt::TempDir tmp("census");
        auto r = run(lt::scripted_config(tmp.path(), 2), 7);
        REQUIRE(r.completed);
        CHECK(r.last_checkpoint == 2);
        auto ev = read_events(r.run_dir / "events.jsonl");
        REQUIRE_FALSE(ev.empty());
        CHECK(ev.front().kind == "run_started");
        CHECK(ev.back().kind == "run_completed");
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i].seq == i + 1);

        auto m0 = census(ev, 0);
        CHECK(m0["exam_issued"] == 1);
        CHECK(m0["exam_graded"] == 4);
        CHECK(m0["answer_batch"] == 4 * 20);
        CHECK(m0["checkpoint"] == 1);

        for (int m : {1, 2}) {
            auto c = census(ev, m);
            CAPTURE(m);
            CHECK(c["lesson"] == 3);
            CHECK(c["study"] == 12);
            CHECK(c["exam_issued"] == 4);
            CHECK(c["exam_graded"] == 16);
            CHECK(c["explanation"] == 12);
            CHECK(c["choice"] == 12);
            CHECK(c["self_concept"] == 4);
            CHECK(c["checkpoint"] == 1);
            CHECK(c["answer_batch"] == 4 * (3 * 4 + 10));
            CHECK(c["warning"] == 0);
            int files = 0;
            for (const auto& f : fs::directory_iterator(r.run_dir / "debates")) {
                files += f.path().filename().string().starts_with("m0" + std::to_string(m)) ? 1 : 0;
            }
            CHECK(c["debate_result"] == files);
            CHECK(c["debate_result"] > 0);
        }

        // within a month, phases never go backwards
        std::pair<int, int> last{0, 0};
        int month = 0;
        for (const auto& e : ev) {
            const auto& t = e.timestamp;
            if (t.month < 1 || t.phase == "done") continue;
            if (t.month != month) {
                month = t.month;
                last = {0, 0};
            }
            std::pair<int, int> now{t.week, phase_rank(t.phase)};
            CHECK_MESSAGE(now.second >= 0, t.phase);
            CHECK_MESSAGE(now >= last, e.seq);
            last = now;
        }

        CHECK(fs::exists(r.run_dir / "checkpoints" / "month_02.json"));
        CHECK(fs::exists(r.run_dir / "grades" / "monthly-m02"));
        CHECK(fs::exists(r.run_dir / "report" / "summary.md"));
    }

    TEST_CASE("serial and parallel runs write identical logs") {
        lt::TempDir tmp("determinism");
        auto a = lt::scripted_config(tmp.path() / "a", 2);
        auto b = lt::scripted_config(tmp.path() / "b", 2);
        b.parallel = false;
        auto ra = run(a, 7), rb = run(b, 7);
        CHECK(lt::slurp(ra.run_dir / "events.jsonl") == lt::slurp(rb.run_dir / "events.jsonl"));
        auto rc = run(lt::scripted_config(tmp.path() / "c", 1), 8);
        CHECK(lt::slurp(rc.run_dir / "events.jsonl") != lt::slurp(ra.run_dir / "events.jsonl"));
    }

    TEST_CASE("interrupted runs resume to the same log") {
        lt::TempDir tmp("resume");
        auto whole = run(lt::scripted_config(tmp.path() / "whole", 3), 7);
        auto cfg = lt::scripted_config(tmp.path() / "cut", 3);
        RunOptions stop;
        stop.stop_after_month = 1;
        auto part = run(cfg, 7, stop);
        CHECK_FALSE(part.completed);
        CHECK(part.last_checkpoint == 1);
        auto again = resume(part.run_dir);
        CHECK(again.completed);
        CHECK(lt::slurp(again.run_dir / "events.jsonl") == lt::slurp(whole.run_dir / "events.jsonl"));
        for (const char* l : {"deep", "surface", "lazy", "general"}) {
            auto f = fs::path("memory") / (std::string(l) + ".jsonl");
            CHECK(lt::slurp(again.run_dir / f) == lt::slurp(whole.run_dir / f));
        }

        auto noop = resume(again.run_dir);
        CHECK(noop.completed);
        CHECK_FALSE(noop.notice.empty());
        CHECK(lt::slurp(noop.run_dir / "events.jsonl") == lt::slurp(whole.run_dir / "events.jsonl"));
    }

    TEST_CASE("resume refuses a run that no longer matches its checkpoint") {
        lt::TempDir tmp("refuse");
        RunOptions stop;
        stop.stop_after_month = 1;
        auto part = run(lt::scripted_config(tmp.path() / "seed", 2), 7, stop);
        auto cfg_file = part.run_dir / "config.json";
        auto cfg = lt::read_json(cfg_file);
        cfg["seed"] = 8;
        lt::write_json(cfg_file, cfg);
        CHECK_THROWS_WITH_AS(resume(part.run_dir), doctest::Contains("config"), Error);

        auto part2 = run(lt::scripted_config(tmp.path() / "log", 2), 7, stop);
        tamper_line(part2.run_dir / "events.jsonl", 3);
        CHECK_THROWS_WITH_AS(resume(part2.run_dir), doctest::Contains("digest"), Error);

        CHECK_THROWS_AS(resume(tmp.path() / "nothing-here"), Error);
    }

    TEST_CASE("folding the log rebuilds the memories") {
        lt::TempDir tmp("fold");
        auto r = run(lt::scripted_config(tmp.path(), 2), 7);
        RunState st({"deep", "surface", "lazy", "general"}, 3);
        for (const auto& e : read_events(r.run_dir / "events.jsonl")) st.apply(e);
        CHECK(st.finished);
        CHECK(st.completed_month == 2);
        for (const auto& [who, store] : st.long_term) {
            CHECK(store.dump_jsonl() == lt::slurp(r.run_dir / "memory" / (who + ".jsonl")));
        }
        for (const auto& [who, stm] : st.short_term) CHECK(stm.size() <= 3);

        Event bogus{1, {1, 1, "study", 0}, "memory_store", {{"learner", "nobody"}, {"entry", json::object()}}};
        CHECK_THROWS_AS(st.apply(bogus), Error);
    }

    TEST_CASE("configuration errors name the field") {
        auto base = json{{"corpus_path", lt::sample_corpus().string()}};
        CHECK_NOTHROW(RunConfig::from_json(base).validate());
        auto bad = [&](json patch, const char* field) {
            auto j = base;
            j.merge_patch(patch);
            CHECK_THROWS_WITH_AS(RunConfig::from_json(j).validate(), doctest::Contains(field), Error);
        };
        bad({{"months", 13}}, "months");
        bad({{"months", 0}}, "months");
        bad({{"k", 0}}, "k");
        bad({{"k_d", 0}}, "k_d");
        bad({{"learners", {"deep", "clever"}}}, "clever");
        bad({{"learners", {"deep", "deep"}}}, "twice");
        bad({{"backend", {{"type", "magic"}}}}, "backend");

        auto rel = RunConfig::from_json({{"corpus_path", "corpus"}, {"output_dir", "out"}}, "/base");
        CHECK(rel.corpus_path == fs::path("/base/corpus"));
        CHECK(rel.output_dir == fs::path("/base/out"));
        CHECK(rel.run_dir_for(4) == fs::path("/base/out/seed-4"));
        auto seeds = RunConfig::from_json({{"corpus_path", "c"}, {"seeds", {1, 2, 3}}});
        CHECK(seeds.all_seeds() == std::vector<std::uint64_t>{1, 2, 3});
        CHECK(RunConfig::from_json({{"corpus_path", "c"}, {"seed", 9}}).all_seeds() == std::vector<std::uint64_t>{9});
    }
}
