#include <algorithm>

#include "lsim/error.hpp"
#include "lsim/memory/retrieval.hpp"
#include "lsim/util/text.hpp"

namespace lsim::memory {

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::weekly_learning: return "weekly_learning";
        case Stage::monthly_exam: return "monthly_exam";
        case Stage::debate: return "debate";
        case Stage::self_concept_eval: return "self_concept_eval";
        case Stage::final_exam: return "final_exam";
    }
    return "?";
}

const std::vector<EntryKind>& permitted_kinds(Stage s) {
    static const std::vector<EntryKind> weekly{EntryKind::knowledge_summary};
    static const std::vector<EntryKind> monthly{EntryKind::knowledge_summary, EntryKind::reflection,
                                                EntryKind::exam_answer, EntryKind::teacher_feedback};
    static const std::vector<EntryKind> debate{EntryKind::exam_answer, EntryKind::debate_record};
    static const std::vector<EntryKind> self_concept{EntryKind::self_concept_record, EntryKind::score_record};
    static const std::vector<EntryKind> final_exam{EntryKind::year_consolidation};
    switch (s) {
        case Stage::weekly_learning: return weekly;
        case Stage::monthly_exam: return monthly;
        case Stage::debate: return debate;
        case Stage::self_concept_eval: return self_concept;
        case Stage::final_exam: return final_exam;
    }
    return weekly;
}

std::vector<std::size_t> rank_similar(const LongTermStore& store, EntryKind kind, const std::string& question,
                                      std::size_t n) {
    std::size_t unknown = 0;
    const auto q = store.intern_query(text::word_set(question), unknown);
    std::vector<std::pair<double, std::size_t>> scored;
    const auto& entries = store.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].kind == kind) scored.emplace_back(store.stem_similarity(i, q, unknown), i);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scored.size() && i < n; ++i) out.push_back(scored[i].second);
    return out;
}

namespace {

bool is_monthly_score(const MemoryEntry& e) {
    return e.kind == EntryKind::score_record && e.payload.value("exam_kind", std::string("monthly")) == "monthly";
}

std::string str(const nlohmann::json& p, const char* key) {
    auto it = p.find(key);
    if (it == p.end() || !it->is_string()) return {};
    return it->get<std::string>();
}

std::string body(const MemoryEntry& e) {
    const auto& p = e.payload;
    switch (e.kind) {
        case EntryKind::knowledge_summary:
        case EntryKind::reflection:
        case EntryKind::year_consolidation:
            return str(p, "text");
        case EntryKind::teacher_feedback:
            return "Batch " + std::to_string(p.value("batch", 0)) + ": " + str(p, "text");
        case EntryKind::exam_answer:
            return "Question: " + str(p, "stem") + " | Answer: " + str(p, "answer");
        case EntryKind::debate_record:
            return str(p, "thread");
        case EntryKind::score_record:
            return str(p, "learner").empty() ? e.owner + " scored " + text::fixed(p["score"].get<double>(), 1) +
                                                   " on " + str(p, "exam_id")
                                             : str(p, "learner") + " scored " +
                                                   text::fixed(p["score"].get<double>(), 1) + " on " +
                                                   str(p, "exam_id");
        case EntryKind::self_concept_record:
            return "Self-concept " + text::fixed(p["score"].get<double>(), 0) + "/100. " + str(p, "description");
    }
    return {};
}

std::string label(EntryKind k) {
    switch (k) {
        case EntryKind::knowledge_summary: return "Knowledge summary";
        case EntryKind::reflection: return "Reflection";
        case EntryKind::exam_answer: return "Past answer";
        case EntryKind::teacher_feedback: return "Teacher feedback";
        case EntryKind::debate_record: return "Debate";
        case EntryKind::score_record: return "Score";
        case EntryKind::self_concept_record: return "Self-concept";
        case EntryKind::year_consolidation: return "Year consolidation";
    }
    return "Entry";
}

}  // namespace

std::string render_entries(const std::vector<MemoryEntry>& entries) {
    if (entries.empty()) return "(none)";
    std::string out;
    for (const auto& e : entries) {
        if (!out.empty()) out += '\n';
        out += "[Month " + std::to_string(e.month);
        if (e.week) out += ", Week " + std::to_string(*e.week);
        out += "] " + label(e.kind) + ": " + text::truncate_utf8(body(e), kRenderCharLimit);
    }
    return out;
}

MemoryBundle retrieve(const LongTermStore& store, Stage stage, const RetrievalContext& ctx) {
    MemoryBundle b;
    b.stage = stage;
    const auto& all = store.entries();
    auto pick = [&](auto&& pred) {
        for (const auto& e : all) {
            if (pred(e)) b.entries.push_back(e);
        }
    };
    switch (stage) {
        case Stage::weekly_learning: {
            if (!ctx.week) throw Error("weekly_learning retrieval needs a week");
            pick([&](const MemoryEntry& e) {
                return e.kind == EntryKind::knowledge_summary && e.month == ctx.month && e.week && *e.week < *ctx.week;
            });
            break;
        }
        case Stage::monthly_exam:
            pick([&](const MemoryEntry& e) {
                switch (e.kind) {
                    case EntryKind::knowledge_summary:
                    case EntryKind::reflection: return e.month == ctx.month;
                    case EntryKind::exam_answer:
                    case EntryKind::teacher_feedback: return e.month < ctx.month;
                    default: return false;
                }
            });
            break;
        case Stage::debate: {
            if (!ctx.question) throw Error("debate retrieval needs the debated question");
            // similarity order, most similar first
            for (auto i : rank_similar(store, EntryKind::exam_answer, *ctx.question, kSimilarTopN)) {
                b.entries.push_back(all[i]);
            }
            for (auto i : rank_similar(store, EntryKind::debate_record, *ctx.question, kSimilarTopN)) {
                b.entries.push_back(all[i]);
            }
            break;
        }
        case Stage::self_concept_eval: {
            pick([&](const MemoryEntry& e) {
                return (e.kind == EntryKind::self_concept_record && e.month < ctx.month) ||
                       (is_monthly_score(e) && e.month <= ctx.month);
            });
            for (const auto& e : ctx.peer_scores) {
                if (is_monthly_score(e) && e.month <= ctx.month) b.entries.push_back(e);
            }
            break;
        }
        case Stage::final_exam: {
            for (auto it = all.rbegin(); it != all.rend(); ++it) {
                if (it->kind == EntryKind::year_consolidation) {
                    b.entries.push_back(*it);
                    break;
                }
            }
            break;
        }
    }
    b.rendered = render_entries(b.entries);
    return b;
}

MemoryEntry consolidate_year(LongTermStore& store, const std::string& learner, const SimTime& at) {
    std::vector<std::string> parts;
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& e : store.entries()) {
        if (e.kind != EntryKind::knowledge_summary) continue;
        std::string head = "[Month " + std::to_string(e.month);
        if (e.week) head += ", Week " + std::to_string(*e.week);
        parts.push_back(head + "] " + str(e.payload, "text"));
        ids.push_back(e.entry_id);
    }
    MemoryEntry e;
    e.owner = learner;
    e.kind = EntryKind::year_consolidation;
    e.month = at.month;
    e.payload = {{"text", text::join(parts, "\n\n")}, {"source_ids", ids}};
    e.created_at = at;
    e.entry_id = store.store(e);
    return e;
}

}  // namespace lsim::memory
