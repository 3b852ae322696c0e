#include <algorithm>
#include <random>

#include "doctest.h"
#include "lsim/memory/retrieval.hpp"
#include "lsim/memory/short_term.hpp"
#include "lsim/util/text.hpp"
#include "support.hpp"

using namespace lsim;
using namespace lsim::memory;
namespace lt = lsim::testing;

TEST_SUITE("memory") {
    TEST_CASE("short-term memory never exceeds its capacity") {
        std::mt19937_64 gen(1);
        for (int trial = 0; trial < 10000; ++trial) {
            ShortTermMemory stm(3);
            const auto n = gen() % 12;
            std::vector<std::string> all;
            for (std::size_t i = 0; i < n; ++i) {
                all.push_back(std::to_string(gen() % 1000));
                stm.append({gen() % 2 ? "deep" : "teacher", all.back(), {}});
                REQUIRE(stm.size() <= 3);
            }
            // the retained turns are the most recent ones, in order
            const auto keep = std::min<std::size_t>(3, all.size());
            REQUIRE(stm.size() == keep);
            for (std::size_t i = 0; i < keep; ++i) REQUIRE(stm.turns()[i].text == all[all.size() - keep + i]);
        }
        auto rt = ShortTermMemory::from_json(ShortTermMemory(3).to_json());
        CHECK(rt.capacity() == 3);
    }

    TEST_CASE("retrieval bundles only carry permitted kinds") {
        std::mt19937_64 gen(2);
        const Stage stages[] = {Stage::weekly_learning, Stage::monthly_exam, Stage::debate, Stage::self_concept_eval,
                                Stage::final_exam};
        for (int trial = 0; trial < 300; ++trial) {
            LongTermStore store("deep"), peer("lazy");
            const auto n = gen() % 60;
            for (std::size_t i = 0; i < n; ++i) store.store(lt::random_entry(gen, "deep"));
            for (int i = 0; i < 10; ++i) peer.store(lt::random_entry(gen, "lazy"));
            RetrievalContext ctx;
            ctx.learner = "deep";
            ctx.month = 1 + static_cast<int>(gen() % 12);
            ctx.week = 1 + static_cast<int>(gen() % 3);
            ctx.question = lt::random_stem(gen);
            for (const auto& e : peer.entries()) ctx.peer_scores.push_back(e);
            for (auto s : stages) {
                auto b = retrieve(store, s, ctx);
                const auto& ok = permitted_kinds(s);
                for (const auto& e : b.entries) {
                    INFO(to_string(s) << " got " << to_string(e.kind));
                    REQUIRE(std::find(ok.begin(), ok.end(), e.kind) != ok.end());
                }
                CHECK(b.rendered == render_entries(b.entries));
            }
        }
    }

    TEST_CASE("stage contents") {
        LongTermStore s("deep");
        auto add = [&](EntryKind k, int month, std::optional<int> week, nlohmann::json p) {
            MemoryEntry e;
            e.kind = k;
            e.month = month;
            e.week = week;
            e.payload = std::move(p);
            return s.store(e);
        };
        auto w1 = add(EntryKind::knowledge_summary, 2, 1, {{"text", "w1"}});
        auto w2 = add(EntryKind::knowledge_summary, 2, 2, {{"text", "w2"}});
        add(EntryKind::knowledge_summary, 1, 1, {{"text", "old"}});
        auto fb_old = add(EntryKind::teacher_feedback, 1, 3, {{"text", "f"}, {"batch", 1}});
        add(EntryKind::teacher_feedback, 2, 1, {{"text", "f"}, {"batch", 1}});
        auto ans = add(EntryKind::exam_answer, 1, std::nullopt,
                       {{"exam_id", "monthly-m01"}, {"question_id", "q"}, {"stem", "s"}, {"answer", "a"}});
        auto refl = add(EntryKind::reflection, 2, std::nullopt, {{"text", "r"}});

        RetrievalContext c;
        c.learner = "deep";
        c.month = 2;
        c.week = 3;
        auto ids = [](const MemoryBundle& b) {
            std::vector<std::string> out;
            for (const auto& e : b.entries) out.push_back(e.entry_id);
            return out;
        };
        CHECK(ids(retrieve(s, Stage::weekly_learning, c)) == std::vector<std::string>{w1, w2});
        auto monthly = ids(retrieve(s, Stage::monthly_exam, c));
        std::sort(monthly.begin(), monthly.end());
        std::vector<std::string> expected = {w1, w2, fb_old, ans, refl};
        std::sort(expected.begin(), expected.end());
        CHECK(monthly == expected);
        CHECK_THROWS_AS(retrieve(s, Stage::debate, c), Error);
        c.week.reset();
        CHECK_THROWS_AS(retrieve(s, Stage::weekly_learning, c), Error);

        auto year = consolidate_year(s, "deep", {12, 4, "year_consolidation", 0});
        CHECK(year.kind == EntryKind::year_consolidation);
        auto fin = retrieve(s, Stage::final_exam, c);
        REQUIRE(fin.entries.size() == 1);
        CHECK(fin.entries[0].entry_id == year.entry_id);
    }

    TEST_CASE("similarity ranking equals the Jaccard oracle") {
        std::mt19937_64 gen(5);
        for (int trial = 0; trial < 300; ++trial) {
            LongTermStore store("deep");
            const auto n = 1 + gen() % 50;
            for (std::size_t i = 0; i < n; ++i) {
                auto e = lt::random_entry(gen, "deep");
                if (gen() % 3) {
                    e.kind = EntryKind::exam_answer;
                    e.week.reset();
                    e.payload = {{"exam_id", "x"}, {"question_id", "q"}, {"stem", lt::random_stem(gen)}, {"answer", "a"}};
                }
                store.store(e);
            }
            const auto q = lt::random_stem(gen) + (gen() % 2 ? " unseen words here" : "");
            const auto qs = text::word_set(q);
            std::vector<std::pair<double, std::size_t>> brute;
            for (std::size_t i = 0; i < store.entries().size(); ++i) {
                const auto& e = store.entries()[i];
                if (e.kind != EntryKind::exam_answer) continue;
                brute.emplace_back(lt::jaccard_oracle(qs, text::word_set(e.payload["stem"].get<std::string>())), i);
            }
            std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second > b.second;
            });
            for (std::size_t top : {std::size_t{1}, std::size_t{3}, std::size_t{50}}) {
                auto got = rank_similar(store, EntryKind::exam_answer, q, top);
                REQUIRE(got.size() == std::min(top, brute.size()));
                for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == brute[i].second);
            }
        }
    }

    TEST_CASE("store validation and round trip") {
        LongTermStore s("deep");
        MemoryEntry bad;
        bad.kind = EntryKind::exam_answer;
        bad.payload = {{"exam_id", "x"}};
        CHECK_THROWS_AS(s.store(bad), SchemaError);
        MemoryEntry sc;
        sc.kind = EntryKind::self_concept_record;
        sc.payload = {{"score", 140}};
        CHECK_THROWS_AS(s.store(sc), SchemaError);

        std::mt19937_64 gen(8);
        for (int i = 0; i < 40; ++i) s.store(lt::random_entry(gen, "deep"));
        auto back = LongTermStore::load_jsonl("deep", s.dump_jsonl());
        CHECK(back == s);
        auto dup = s.entries()[0];
        CHECK_THROWS_AS(s.store(dup), SchemaError);
    }
}
