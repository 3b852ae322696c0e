#include "lsim/debate/debate.hpp"

namespace lsim::debate {

using nlohmann::json;

std::optional<double> Ratio::rate() const {
    if (den == 0) return std::nullopt;
    return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

DebateOutcomeStats compute_debate_stats(const std::vector<DebateTranscript>& transcripts) {
    DebateOutcomeStats out;
    for (const auto& t : transcripts) {
        for (int i = 0; i < 2; ++i) {
            const int o = 1 - i;
            auto& s = out[t.participants[i]];
            const auto& mine0 = t.initial_answers[i];
            const auto& mine1 = t.final_answers[i];
            const bool me_right = mine0 == t.answer_key;
            const bool peer_right = t.initial_answers[o] == t.answer_key;

            ++s.persuasion.den;
            if (t.final_answers[o] == mine0 && mine1 == mine0) ++s.persuasion.num;
            if (me_right && !peer_right) {
                ++s.resist_wrong.den;
                if (mine1 == t.answer_key) ++s.resist_wrong.num;
            }
            if (!me_right && peer_right) {
                ++s.accept_correct.den;
                if (mine1 == t.answer_key) ++s.accept_correct.num;
            }
        }
    }
    return out;
}

json to_json(const DebateOutcomeStats& stats) {
    auto ratio = [](const Ratio& r) {
        auto v = r.rate();
        return json{{"num", r.num}, {"den", r.den}, {"rate", v ? json(*v) : json(nullptr)}};
    };
    json j = json::object();
    for (const auto& [learner, s] : stats) {
        j[learner] = {{"persuasion", ratio(s.persuasion)},
                      {"resist_wrong", ratio(s.resist_wrong)},
                      {"accept_correct", ratio(s.accept_correct)}};
    }
    return j;
}

}  // namespace lsim::debate
