#include <map>
#include <set>

#include "doctest.h"
#include "lsim/agents/scripted_backend.hpp"
#include "lsim/agents/templates.hpp"
#include "lsim/corpus/exam.hpp"
#include "lsim/corpus/trap_gen.hpp"
#include "support.hpp"

using namespace lsim;
using namespace lsim::corpus;
namespace lt = lsim::testing;
namespace fs = std::filesystem;

TEST_SUITE("corpus") {
    TEST_CASE("sample corpus is valid") {
        auto bank = load_question_bank(lt::sample_corpus());
        auto rep = validate_bank(bank);
        for (const auto& v : rep.violations) MESSAGE(v.code << ": " << v.message);
        CHECK(rep.is_valid);
        CHECK(bank.anchor_ids.size() == kAnchorSize);
        CHECK(bank.knowledge_points.size() == 36);
    }

    TEST_CASE("monthly exams have 15/15/20 sections and valid trap sources") {
        auto bank = load_question_bank(lt::sample_corpus());
        for (int m = 1; m <= kMonths; ++m) {
            auto e = assemble_exam(bank, ExamKind::monthly, m, std::nullopt, 11);
            REQUIRE(e.items.size() == kMonthlySize);
            std::map<Category, std::size_t> n;
            for (const auto& it : e.items) n[it.section] += 1;
            CHECK(n[Category::review] == 15);
            CHECK(n[Category::trap] == 15);
            CHECK(n[Category::knowledge_integration] == 20);
            REQUIRE(e.sections.size() == 3);
            CHECK(e.sections[0].end - e.sections[0].begin == 15);
            CHECK(e.sections[2].end - e.sections[2].begin == 20);
            std::set<std::string> ids;
            for (const auto& it : e.items) ids.insert(it.question_id);
            CHECK(ids.size() == kMonthlySize);
            for (const auto& it : e.items) {
                if (it.section != Category::trap) continue;
                const auto& trap = bank.at(it.question_id);
                REQUIRE(trap.trap_source_id);
                const auto& src = bank.at(*trap.trap_source_id);
                CHECK(src.category == Category::weekly);
                CHECK(src.month <= m);
            }
            // same seed, same exam
            auto again = assemble_exam(bank, ExamKind::monthly, m, std::nullopt, 11);
            CHECK(to_json(again) == to_json(e));
        }
    }

    TEST_CASE("weekly and anchor exams") {
        auto bank = load_question_bank(lt::sample_corpus());
        auto w = assemble_exam(bank, ExamKind::weekly, 4, 2, 1);
        CHECK(w.items.size() == kWeeklySize);
        for (const auto& it : w.items) {
            const auto& q = bank.at(it.question_id);
            CHECK(q.month == 4);
            CHECK(q.week == 2);
        }
        auto a = assemble_exam(bank, ExamKind::initial, std::nullopt, std::nullopt, 1);
        auto f = assemble_exam(bank, ExamKind::final, std::nullopt, std::nullopt, 99);
        CHECK(a.items.size() == kAnchorSize);
        REQUIRE(f.items.size() == a.items.size());
        for (std::size_t i = 0; i < a.items.size(); ++i) CHECK(a.items[i].question_id == f.items[i].question_id);
        CHECK(a.exam_id == "initial");
        CHECK(w.exam_id == exam_id_for(ExamKind::weekly, 4, 2));
        CHECK_THROWS_AS(assemble_exam(bank, ExamKind::weekly, 4, 4, 1), Error);
    }

    TEST_CASE("corruption suite: every mutation is reported against its record") {
        const auto suite = lt::corruption_suite();
        CHECK(suite.size() == 20);
        lt::TempDir tmp("corrupt");
        for (const auto& c : suite) {
            auto r = lt::run_corruption(c, tmp.path() / "corpus");
            INFO(c.name << " -> " << r.first);
            CHECK(r.diagnostics >= 1);
            CHECK(r.detected);
        }
    }

    TEST_CASE("malformed json names the file") {
        lt::TempDir tmp("badjson");
        fs::copy(lt::sample_corpus(), tmp.path() / "c", fs::copy_options::recursive);
        std::ofstream(tmp.path() / "c" / "months" / "04.json") << "{\"month\": 4, \"questions\": [";
        try {
            load_question_bank(tmp.path() / "c");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("04.json") != std::string::npos);
        }
    }

    TEST_CASE("trap drafts are checked and never verified") {
        auto bank = std::make_shared<QuestionBank>(load_question_bank(lt::sample_corpus()));
        auto src = bank->at("m01w1q01");
        auto draft = src;
        draft.id = "draft";
        draft.category = Category::trap;
        draft.trap_source_id = src.id;
        auto why = check_trap_draft(draft, src);
        REQUIRE(why);
        CHECK(why->find("trap must flip answer") != std::string::npos);

        agents::ScriptedBackend backend(bank, agents::ScriptedConfig::from_json(nlohmann::json::object(), 3));
        auto drafts = generate_trap_candidates(*bank, {"m01w1q01", "m02w3q04"}, backend,
                                               agents::TemplateLibrary::builtin());
        REQUIRE(!drafts.empty());
        for (const auto& d : drafts) {
            CHECK_FALSE(d.verified);
            CHECK(d.question.category == Category::trap);
            if (d.accepted) CHECK_FALSE(check_trap_draft(d.question, bank->at(d.source_id)));
        }
        CHECK_THROWS_AS(generate_trap_candidates(*bank, {"nope"}, backend, agents::TemplateLibrary::builtin()),
                        Error);
    }
}
