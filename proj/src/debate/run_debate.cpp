#include "lsim/agents/learner.hpp"
#include "lsim/agents/structured.hpp"
#include "lsim/debate/debate.hpp"
#include "lsim/error.hpp"
#include "lsim/memory/retrieval.hpp"

namespace lsim::debate {

using nlohmann::json;

namespace {

std::string question_text(const corpus::Question& q) {
    std::string s = q.stem;
    for (const auto& o : q.options) s += "\n" + o.label + ". " + o.text;
    return s;
}

std::string recent_progress(const DebateTranscript& t, const std::array<std::string, 2>& names) {
    if (t.rounds.empty()) return "(none)";
    std::string out;
    const std::size_t from = t.rounds.size() > 4 ? t.rounds.size() - 4 : 0;
    for (std::size_t i = from; i < t.rounds.size(); ++i) {
        const auto& s = t.rounds[i];
        if (!out.empty()) out += '\n';
        out += "Round " + std::to_string(s.round_index) + ", " + (s.speaker == t.participants[0] ? names[0] : names[1]) +
               ": " + s.statement;
    }
    return out;
}

}  // namespace

DebateTranscript run_debate(const DebateSetup& setup, Participant a, Participant b, agents::AgentContext& moderator) {
    if (!setup.question) throw Error("run_debate needs a question");
    if (setup.round_cap < 1) throw Error("round cap must be at least 1");
    const auto& q = *setup.question;
    std::array<Participant*, 2> p = {&a, &b};
    std::array<std::string, 2> names = {a.ctx->display_name, b.ctx->display_name};

    DebateTranscript t;
    t.debate_id = setup.debate_id;
    t.month = setup.month;
    t.question_id = q.id;
    t.participants = {a.ctx->agent_id, b.ctx->agent_id};
    t.initial_answers = {assess::normalize_answer(a.answer, q), assess::normalize_answer(b.answer, q)};
    t.answer_key = assess::normalize_answer(q.answer_key, q);
    t.round_cap = setup.round_cap;

    // Each side's debate-stage memories, fixed for the whole debate.
    std::array<std::string, 2> memories;
    for (int i = 0; i < 2; ++i) {
        memory::RetrievalContext rc;
        rc.learner = p[i]->ctx->agent_id;
        rc.month = setup.month;
        rc.question = q.stem;
        memories[i] = memory::retrieve(*p[i]->ctx->long_term, memory::Stage::debate, rc).rendered;
    }
    std::array<std::string, 2> current = {a.answer, b.answer};
    std::array<std::string, 2> last_statement = {a.reasoning, b.reasoning};

    bool done = false;
    for (int round = 1; round <= setup.round_cap && !done; ++round) {
        std::string round_text;
        for (int i = 0; i < 2 && !done; ++i) {
            auto& me = *p[i]->ctx;
            const int o = 1 - i;
            const std::string view = "Answer: " + current[i] + "\nReasoning: " + last_statement[i] +
                                     "\n\nRelated memories:\n" + memories[i];
            const std::string opp_view = "Answer: " + current[o] + "\n" + last_statement[o];
            const auto prompt = me.templates->render("debate_learner", {{0, names[i]},
                                                                        {1, question_text(q)},
                                                                        {2, view},
                                                                        {3, names[o]},
                                                                        {4, opp_view},
                                                                        {5, recent_progress(t, names)},
                                                                        {6, std::to_string(round)},
                                                                        {7, i == 0 ? "first" : "second"}});
            const json context = {{"learner", me.agent_id},  {"debate_id", t.debate_id},
                                  {"question_id", q.id},    {"round", round},
                                  {"position", i},          {"my_answer", current[i]},
                                  {"opponent", p[o]->ctx->agent_id}, {"opponent_answer", current[o]}};
            auto said = agents::invoke(me, "debate_learner", prompt, context).text;
            Statement s{round, me.agent_id, said, detect_answer_change(said)};
            me.sink->emit("debate_round", {{"debate_id", t.debate_id},
                                           {"round", round},
                                           {"speaker", me.agent_id},
                                           {"statement", said},
                                           {"stated_answer", s.stated_answer ? json(*s.stated_answer) : json(nullptr)}});
            if (!round_text.empty()) round_text += '\n';
            round_text += names[i] + ": " + said;
            last_statement[i] = said;
            t.rounds.push_back(s);
            if (s.stated_answer) {
                current[i] = *s.stated_answer;
                done = true;  // a concession ends the debate at once, without a ruling
            }
        }
        if (done) break;

        const auto mprompt = moderator.templates->render(
            "debate_moderator", {{0, std::to_string(setup.month)},
                                 {1, question_text(q)},
                                 {2, names[0]},
                                 {3, a.answer},
                                 {4, names[1]},
                                 {5, b.answer},
                                 {6, q.answer_key},
                                 {7, current[0]},
                                 {8, current[1]},
                                 {9, round_text}});
        const json mctx = {{"debate_id", t.debate_id}, {"round", round}, {"round_cap", setup.round_cap}};
        auto ruling = agents::ask_structured<agents::ModeratorRuling>(
            moderator, "debate_moderator", mprompt, mctx,
            [](const std::string& raw) { return agents::parse_moderator(raw); });
        ModeratorDecision d;
        d.after_round = round;
        if (ruling.value) {
            d.end = ruling.value->end;
            d.reason = ruling.value->reason;
        } else {
            d.parsed = false;
            d.end = false;
            d.reason = "unreadable ruling: " + ruling.error;
            agents::warn(moderator, "moderator_unparsed", "treating an unreadable ruling as continue",
                         {{"debate_id", t.debate_id}, {"round", round}});
        }
        moderator.sink->emit("moderator_decision", {{"debate_id", t.debate_id},
                                                    {"after_round", round},
                                                    {"decision", d.end ? "end" : "continue"},
                                                    {"reason", d.reason},
                                                    {"parsed", d.parsed}});
        t.moderator_decisions.push_back(d);
        if (d.end) done = true;
    }

    t.final_answers = final_answers_of(t, q);
    t.outcome = classify_outcome(t);
    moderator.sink->emit("debate_result", {{"transcript", to_json(t)}});

    const auto thread = render_thread(t);
    for (auto* part : p) {
        memory::MemoryEntry e;
        e.kind = memory::EntryKind::debate_record;
        e.month = setup.month;
        e.payload = {{"debate_id", t.debate_id},
                     {"question_id", q.id},
                     {"stem", q.stem},
                     {"thread", thread},
                     {"outcome", to_string(t.outcome.kind)}};
        agents::remember(*part->ctx, std::move(e));
    }
    return t;
}

}  // namespace lsim::debate
