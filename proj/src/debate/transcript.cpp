#include <algorithm>

#include "lsim/debate/debate.hpp"
#include "lsim/error.hpp"
#include "lsim/util/text.hpp"

namespace lsim::debate {

using nlohmann::json;

std::string_view to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::persuaded: return "persuaded";
        case OutcomeKind::both_held: return "both_held";
        case OutcomeKind::converged: return "converged";
        case OutcomeKind::round_cap: return "round_cap";
    }
    return "?";
}

namespace {

OutcomeKind parse_outcome_kind(const std::string& s) {
    for (auto k : {OutcomeKind::persuaded, OutcomeKind::both_held, OutcomeKind::converged, OutcomeKind::round_cap}) {
        if (to_string(k) == s) return k;
    }
    throw Error("unknown debate outcome '" + s + "'");
}

json opt(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::string> opt_str(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<std::string>();
}

}  // namespace

int DebateTranscript::round_count() const {
    int n = 0;
    for (const auto& s : rounds) n = std::max(n, s.round_index);
    return n;
}

json to_json(const DebateTranscript& t) {
    json rounds = json::array();
    for (const auto& s : t.rounds) {
        rounds.push_back({{"round_index", s.round_index},
                          {"speaker", s.speaker},
                          {"statement", s.statement},
                          {"stated_answer", opt(s.stated_answer)}});
    }
    json mods = json::array();
    for (const auto& m : t.moderator_decisions) {
        mods.push_back({{"after_round", m.after_round},
                        {"decision", m.end ? "end" : "continue"},
                        {"reason", m.reason},
                        {"parsed", m.parsed}});
    }
    return {{"debate_id", t.debate_id},
            {"month", t.month},
            {"question_id", t.question_id},
            {"participants", t.participants},
            {"initial_answers", t.initial_answers},
            {"answer_key", t.answer_key},
            {"round_cap", t.round_cap},
            {"rounds", rounds},
            {"moderator_decisions", mods},
            {"final_answers", t.final_answers},
            {"outcome",
             {{"kind", to_string(t.outcome.kind)}, {"winner", opt(t.outcome.winner)}, {"loser", opt(t.outcome.loser)}}}};
}

DebateTranscript transcript_from_json(const json& j) {
    DebateTranscript t;
    t.debate_id = j.at("debate_id").get<std::string>();
    t.month = j.at("month").get<int>();
    t.question_id = j.at("question_id").get<std::string>();
    t.participants = j.at("participants").get<std::array<std::string, 2>>();
    t.initial_answers = j.at("initial_answers").get<std::array<std::string, 2>>();
    t.answer_key = j.at("answer_key").get<std::string>();
    t.round_cap = j.at("round_cap").get<int>();
    for (const auto& r : j.at("rounds")) {
        t.rounds.push_back({r.at("round_index").get<int>(), r.at("speaker").get<std::string>(),
                            r.at("statement").get<std::string>(), opt_str(r, "stated_answer")});
    }
    for (const auto& m : j.at("moderator_decisions")) {
        t.moderator_decisions.push_back({m.at("after_round").get<int>(), m.at("decision").get<std::string>() == "end",
                                         m.at("reason").get<std::string>(), m.value("parsed", true)});
    }
    t.final_answers = j.at("final_answers").get<std::array<std::string, 2>>();
    const auto& o = j.at("outcome");
    t.outcome = {parse_outcome_kind(o.at("kind").get<std::string>()), opt_str(o, "winner"), opt_str(o, "loser")};
    return t;
}

std::optional<std::string> detect_answer_change(std::string_view statement) {
    const std::string lower = text::to_lower(statement);
    static constexpr std::string_view kAnswerIs = "believe the answer is";
    std::size_t search = 0;
    while (true) {
        auto conv = lower.find("convinced", search);
        if (conv == std::string::npos) return std::nullopt;
        search = conv + 1;
        auto head = std::string_view(lower).substr(0, conv);
        while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
        if (head.ends_with("not") || head.ends_with("n't") || head.ends_with("n\xe2\x80\x99t")) continue;
        auto at = lower.find(kAnswerIs, conv);
        if (at == std::string::npos) return std::nullopt;
        std::size_t b = at + kAnswerIs.size();
        while (b < statement.size() && (statement[b] == ' ' || statement[b] == ':' || statement[b] == '\t')) ++b;
        std::size_t e = b;
        while (e < statement.size() && statement[e] != '\n' && statement[e] != '\r') {
            if ((statement[e] == '.' || statement[e] == '!' || statement[e] == '?') &&
                (e + 1 == statement.size() || statement[e + 1] == ' ')) {
                break;
            }
            ++e;
        }
        // same cleaning as assess::clean_answer, without lowercasing
        std::string span(statement.substr(b, e - b));
        const std::string cleaned = assess::clean_answer(span);
        if (cleaned.empty()) return std::nullopt;
        const std::string lower_span = text::to_lower(span);
        auto pos = lower_span.find(cleaned);
        if (pos == std::string::npos) return cleaned;
        return span.substr(pos, cleaned.size());
    }
}

std::array<std::string, 2> final_answers_of(const DebateTranscript& t, const corpus::Question& q) {
    auto out = t.initial_answers;
    for (const auto& s : t.rounds) {
        if (!s.stated_answer) continue;
        for (int i = 0; i < 2; ++i) {
            if (s.speaker == t.participants[i]) out[i] = assess::normalize_answer(*s.stated_answer, q);
        }
    }
    return out;
}

namespace {

bool mentions_convergence(const std::string& reason) {
    const auto r = text::to_lower(reason);
    for (const char* w : {"similar", "repetitive", "repetition", "repeat", "converge", "same view", "agree"}) {
        if (r.find(w) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

Outcome classify_outcome(const DebateTranscript& t) {
    for (const auto& s : t.rounds) {
        if (!s.stated_answer) continue;
        const int loser = s.speaker == t.participants[0] ? 0 : 1;
        const int winner = 1 - loser;
        if (t.final_answers[loser] == t.initial_answers[winner] &&
            t.final_answers[winner] == t.initial_answers[winner]) {
            return {OutcomeKind::persuaded, t.participants[winner], t.participants[loser]};
        }
        return {OutcomeKind::converged, std::nullopt, std::nullopt};
    }
    if (!t.moderator_decisions.empty()) {
        const auto& last = t.moderator_decisions.back();
        if (last.end && last.after_round < t.round_cap) {
            return {mentions_convergence(last.reason) ? OutcomeKind::converged : OutcomeKind::both_held, std::nullopt,
                    std::nullopt};
        }
    }
    return {OutcomeKind::round_cap, std::nullopt, std::nullopt};
}

std::string render_thread(const DebateTranscript& t) {
    std::string out = t.participants[0] + " (" + t.initial_answers[0] + ") vs " + t.participants[1] + " (" +
                      t.initial_answers[1] + ")";
    for (const auto& s : t.rounds) {
        out += "\nRound " + std::to_string(s.round_index) + ", " + s.speaker + ": " + s.statement;
    }
    out += "\nOutcome: " + std::string(to_string(t.outcome.kind));
    if (t.outcome.winner) out += " (" + *t.outcome.winner + " persuaded " + *t.outcome.loser + ")";
    out += "; final answers " + t.final_answers[0] + " / " + t.final_answers[1];
    return out;
}

}  // namespace lsim::debate
