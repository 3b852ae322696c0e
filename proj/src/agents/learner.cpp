#include "lsim/agents/learner.hpp"

#include <algorithm>
#include <map>

#include "lsim/error.hpp"
#include "lsim/util/text.hpp"

namespace lsim::agents {

using nlohmann::json;
using memory::EntryKind;

std::string exam_template(corpus::ExamKind kind) {
    switch (kind) {
        case corpus::ExamKind::weekly: return "weekly_exercise_learner";
        case corpus::ExamKind::monthly: return "monthly_test";
        case corpus::ExamKind::initial:
        case corpus::ExamKind::final: return "anchor_exam";
    }
    return "weekly_exercise_learner";
}

bool exam_wants_confidence(corpus::ExamKind kind) { return kind != corpus::ExamKind::weekly; }

std::string render_questions(const std::vector<const corpus::Question*>& batch) {
    std::string out;
    int n = 0;
    for (const auto* q : batch) {
        if (n > 0) out += "\n\n";
        out += "Question " + std::to_string(++n) + " (" + std::string(corpus::to_string(q->format)) + "): " + q->stem;
        for (const auto& o : q->options) out += "\n" + o.label + ". " + o.text;
    }
    return out;
}

std::vector<assess::GivenAnswer> take_exam(AgentContext& ctx, const corpus::Exam& exam,
                                           const corpus::QuestionBank& bank, const Bindings& slots) {
    const auto template_id = exam_template(exam.kind);
    const bool with_conf = exam_wants_confidence(exam.kind);
    std::vector<assess::GivenAnswer> out;
    out.reserve(exam.items.size());
    int batch_no = 0;
    for (std::size_t begin = 0; begin < exam.items.size(); begin += kBatchSize) {
        const std::size_t end = std::min(exam.items.size(), begin + kBatchSize);
        ++batch_no;
        std::vector<const corpus::Question*> batch;
        json ids = json::array();
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(&bank.at(exam.items[i].question_id));
            ids.push_back(exam.items[i].question_id);
        }
        Bindings b = slots;
        b[3] = render_questions(batch);
        const auto prompt = ctx.templates->render(template_id, b);
        const json context = {{"learner", ctx.agent_id},     {"exam_id", exam.exam_id},
                              {"exam_kind", corpus::to_string(exam.kind)},
                              {"month", exam.month.value_or(0)}, {"batch", batch_no},
                              {"question_ids", ids},         {"with_confidence", with_conf}};
        const std::size_t n = batch.size();
        auto parsed = ask_structured<StructuredAnswerSet>(
            ctx, template_id, prompt, context,
            [n, with_conf](const std::string& raw) { return parse_answer_set(raw, n, with_conf); });

        json answers = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            assess::GivenAnswer a;
            a.question_id = batch[i]->id;
            if (parsed.value) {
                const auto& item = parsed.value->answers[i];
                a.answer = item.answer;
                a.reasoning = item.reasoning;
                a.confidence = item.confidence;
            } else {
                a.reasoning = parsed.raw;
                if (with_conf) a.confidence = 0;
            }
            json aj = {{"question_id", a.question_id}, {"answer", a.answer}, {"reasoning", a.reasoning}};
            if (a.confidence) aj["confidence"] = *a.confidence;
            answers.push_back(std::move(aj));
            out.push_back(std::move(a));
        }
        if (!parsed.value) {
            warn(ctx, "degraded_batch", "answers for batch " + std::to_string(batch_no) + " of " + exam.exam_id +
                                            " could not be parsed: " + parsed.error,
                 {{"exam_id", exam.exam_id}, {"batch", batch_no}});
        }
        ctx.sink->emit("answer_batch", {{"learner", ctx.agent_id},
                                        {"exam_id", exam.exam_id},
                                        {"batch", batch_no},
                                        {"parse_attempts", parsed.attempts},
                                        {"degraded", !parsed.value},
                                        {"answers", std::move(answers)}});
    }
    return out;
}

std::string study(AgentContext& ctx, const corpus::KnowledgePoint& kp, const std::string& lesson) {
    const auto prompt = ctx.templates->render("weekly_learning", {{0, lesson}});
    const json context = {{"learner", ctx.agent_id}, {"month", kp.month},  {"week", kp.week},
                          {"topic", kp.topic},       {"content", kp.teaching_content}};
    auto notes = invoke(ctx, "weekly_learning", prompt, context).text;
    memory::MemoryEntry e;
    e.kind = EntryKind::knowledge_summary;
    e.month = kp.month;
    e.week = kp.week;
    e.payload = {{"text", notes}, {"source", "study"}};
    auto stored = remember(ctx, std::move(e));
    ctx.sink->emit("study", {{"learner", ctx.agent_id},
                             {"month", kp.month},
                             {"week", kp.week},
                             {"entry_id", stored.entry_id}});
    return notes;
}

namespace {

std::string choice_template(ChoiceKind kind) {
    switch (kind) {
        case ChoiceKind::consolidation: return "choice_consolidation";
        case ChoiceKind::reflection: return "choice_reflection";
        case ChoiceKind::pre_exam_review: return "choice_pre_exam_review";
    }
    return {};
}

}  // namespace

StrategicChoice strategic_choice(AgentContext& ctx, ChoiceKind kind, int month, const std::string& material) {
    const auto template_id = choice_template(kind);
    const auto slot0 = kind == ChoiceKind::pre_exam_review ? std::to_string(month) : material;
    const auto prompt = ctx.templates->render(template_id, {{0, slot0}});
    json context = {{"learner", ctx.agent_id}, {"month", month}, {"kind", to_string(kind)}};
    if (kind != ChoiceKind::pre_exam_review) context["material"] = material;
    auto parsed = ask_structured<StrategicChoice>(ctx, template_id, prompt, context,
                                                  [kind](const std::string& raw) { return parse_choice(raw, kind); });
    StrategicChoice c;
    c.kind = kind;
    if (parsed.value) {
        c = *parsed.value;
    } else {
        warn(ctx, "choice_unparsed", "treating an unreadable " + std::string(to_string(kind)) + " choice as rest",
             {{"month", month}, {"error", parsed.error}});
    }
    json payload = {{"learner", ctx.agent_id},
                    {"month", month},
                    {"kind", to_string(kind)},
                    {"decision", to_string(c.decision)},
                    {"parse_attempts", parsed.attempts},
                    {"fallback", !parsed.value}};
    if (c.content) payload["content"] = *c.content;
    ctx.sink->emit("choice", std::move(payload));

    if (c.decision == Decision::work && kind != ChoiceKind::pre_exam_review) {
        memory::MemoryEntry e;
        e.kind = kind == ChoiceKind::consolidation ? EntryKind::knowledge_summary : EntryKind::reflection;
        e.month = month;
        e.payload = {{"text", *c.content}, {"source", to_string(kind)}};
        remember(ctx, std::move(e));
    }
    return c;
}

std::string pre_exam_review(AgentContext& ctx, int month, const std::string& materials) {
    const auto prompt =
        ctx.templates->render("pre_exam_review_session", {{0, std::to_string(month)}, {1, materials}});
    return invoke(ctx, "pre_exam_review_session", prompt, {{"learner", ctx.agent_id}, {"month", month}}).text;
}

SelfConceptUpdate update_self_concept(AgentContext& ctx, int month, const memory::MemoryBundle& bundle,
                                      std::optional<int> fallback_initial) {
    std::vector<memory::MemoryEntry> history, own, peers;
    std::optional<int> previous;
    json own_scores = json::array();
    std::map<std::string, std::pair<int, double>> peer_latest;  // owner -> (month, score)
    for (const auto& e : bundle.entries) {
        if (e.kind == EntryKind::self_concept_record) {
            history.push_back(e);
            previous = static_cast<int>(e.payload["score"].get<double>());
        } else if (e.owner == ctx.agent_id) {
            own.push_back(e);
            own_scores.push_back(e.payload["score"].get<double>());
        } else {
            peers.push_back(e);
            auto& slot = peer_latest[e.owner];
            if (e.month >= slot.first) slot = {e.month, e.payload["score"].get<double>()};
        }
    }
    json peer_json = json::array();
    for (const auto& [owner, v] : peer_latest) peer_json.push_back(v.second);

    const auto prompt = ctx.templates->render(
        "self_concept", {{0, std::to_string(month)},
                         {1, memory::render_entries(history)},
                         {2, memory::render_entries(own)},
                         {3, memory::render_entries(peers)}});
    json context = {{"learner", ctx.agent_id}, {"month", month}, {"own_scores", own_scores},
                    {"peer_latest", peer_json}};
    context["previous_score"] = previous ? json(*previous) : json(nullptr);
    auto parsed = ask_structured<SelfConceptUpdate>(ctx, "self_concept", prompt, context,
                                                    [](const std::string& raw) { return parse_self_concept(raw); });
    SelfConceptUpdate u;
    bool clamped = false;
    if (parsed.value) {
        u = *parsed.value;
        if (u.score < 0 || u.score > 100) {
            clamped = true;
            warn(ctx, "self_concept_clamped",
                 "self-concept " + std::to_string(u.score) + " clamped to [0, 100]", {{"month", month}});
            u.score = std::clamp(u.score, 0, 100);
        }
    } else {
        u.score = previous.value_or(fallback_initial.value_or(50));
        u.description = "(carried forward)";
        warn(ctx, "self_concept_unparsed", "carrying the previous self-concept forward",
             {{"month", month}, {"error", parsed.error}});
    }
    ctx.sink->emit("self_concept", {{"learner", ctx.agent_id},
                                    {"month", month},
                                    {"score", u.score},
                                    {"description", u.description},
                                    {"clamped", clamped},
                                    {"carried_forward", !parsed.value},
                                    {"parse_attempts", parsed.attempts}});
    memory::MemoryEntry e;
    e.kind = EntryKind::self_concept_record;
    e.month = month;
    e.payload = {{"score", u.score}, {"description", u.description}};
    remember(ctx, std::move(e));
    return u;
}

}  // namespace lsim::agents
