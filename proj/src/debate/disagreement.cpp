#include <algorithm>

#include "lsim/debate/debate.hpp"
#include "lsim/error.hpp"
#include "lsim/util/rng.hpp"

namespace lsim::debate {

std::vector<Disagreement> find_disagreements(const corpus::Exam& exam,
                                             const std::vector<assess::GradedAttempt>& attempts,
                                             std::optional<std::size_t> cap, std::uint64_t seed) {
    std::vector<Disagreement> out;
    for (std::size_t pos = 0; pos < exam.items.size(); ++pos) {
        const auto& qid = exam.items[pos].question_id;
        for (std::size_t i = 0; i < attempts.size(); ++i) {
            for (std::size_t j = i + 1; j < attempts.size(); ++j) {
                const auto& ai = attempts[i].items.at(pos);
                const auto& aj = attempts[j].items.at(pos);
                if (ai.question_id != qid || aj.question_id != qid) {
                    throw Error("graded attempts do not follow the order of " + exam.exam_id);
                }
                if (ai.normalized != aj.normalized) out.push_back({qid, attempts[i].learner_id, attempts[j].learner_id});
            }
        }
    }
    if (cap && out.size() > *cap) {
        std::vector<std::size_t> idx(out.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        rng::Stream s(rng::derive(seed, {"debate_cap", exam.exam_id}));
        idx = s.sample(std::move(idx), *cap);
        std::sort(idx.begin(), idx.end());
        std::vector<Disagreement> kept;
        for (auto i : idx) kept.push_back(out[i]);
        out = std::move(kept);
    }
    return out;
}

}  // namespace lsim::debate
