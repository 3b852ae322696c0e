#include <map>
#include <set>

#include "lsim/assess/grading.hpp"
#include "lsim/corpus/exam.hpp"
#include "lsim/corpus/validation.hpp"
#include "lsim/util/text.hpp"

namespace lsim::corpus {

using nlohmann::json;

json ValidationReport::to_json() const {
    json v = json::array();
    for (const auto& x : violations) {
        json j = {{"code", x.code}, {"message", x.message}};
        if (x.question_id) j["question_id"] = *x.question_id;
        v.push_back(std::move(j));
    }
    return {{"is_valid", is_valid}, {"violations", std::move(v)}};
}

namespace {

class Collector {
  public:
    void add(std::string code, std::string message, std::optional<std::string> qid = std::nullopt) {
        out.push_back({std::move(code), std::move(message), std::move(qid)});
    }
    void question(const Question& q, std::string code, const std::string& what) {
        add(std::move(code), "question " + q.id + ": " + what, q.id);
    }
    std::vector<Violation> out;
};

std::string kp_name(const KnowledgePoint& kp) {
    return "knowledge point (month " + std::to_string(kp.month) + ", week " + std::to_string(kp.week) + ")";
}

void check_knowledge_points(const QuestionBank& bank, Collector& c) {
    std::map<std::pair<int, int>, int> seen;
    for (std::size_t i = 0; i < bank.knowledge_points.size(); ++i) {
        const auto& kp = bank.knowledge_points[i];
        if (kp.month < 1 || kp.month > kMonths || kp.week < 1 || kp.week > kTeachingWeeks) {
            c.add("knowledge_point_out_of_range", kp_name(kp) + " is outside months 1-12 / weeks 1-3");
        }
        int file_month = i < bank.knowledge_point_file_month.size() ? bank.knowledge_point_file_month[i] : kp.month;
        if (file_month != kp.month) {
            c.add("knowledge_point_misplaced",
                  kp_name(kp) + " is stored in the file for month " + std::to_string(file_month));
        }
        if (text::trim(kp.topic).empty() || text::trim(kp.teaching_content).empty()) {
            c.add("knowledge_point_empty", kp_name(kp) + " has an empty topic or teaching content");
        }
        seen[{kp.month, kp.week}] += 1;
    }
    for (int m = 1; m <= kMonths; ++m) {
        for (int w = 1; w <= kTeachingWeeks; ++w) {
            int n = seen.count({m, w}) ? seen[{m, w}] : 0;
            std::string where = "month " + std::to_string(m) + " week " + std::to_string(w);
            if (n == 0) c.add("missing_knowledge_point", "no knowledge point for " + where);
            if (n > 1) c.add("duplicate_knowledge_point", std::to_string(n) + " knowledge points for " + where);
        }
    }
}

void check_question(const QuestionBank& bank, std::size_t index, Collector& c) {
    const auto& q = bank.questions[index];
    const int file_month = index < bank.question_file_month.size() ? bank.question_file_month[index] : q.month;
    if (text::trim(q.id).empty()) c.add("empty_id", "question at position " + std::to_string(index) + " has an empty id");
    if (text::trim(q.stem).empty()) c.question(q, "empty_stem", "stem is empty");
    if (assess::clean_answer(q.answer_key).empty()) c.question(q, "empty_answer_key", "answer_key is empty");
    if (q.month < 1 || q.month > kMonths) {
        c.question(q, "month_out_of_range", "month " + std::to_string(q.month) + " is outside 1-12");
    }

    if (q.format == Format::multiple_choice) {
        if (q.options.size() < 2) {
            c.question(q, "mc_too_few_options", "multiple-choice item needs at least 2 options");
        }
        std::set<std::string> labels;
        int key_hits = 0;
        const auto key = text::to_lower(text::trim(q.answer_key));
        for (const auto& o : q.options) {
            auto l = text::to_lower(text::trim(o.label));
            if (l.empty() || !labels.insert(l).second) {
                c.question(q, "mc_bad_label", "option labels must be non-empty and distinct");
            }
            if (key == l || key == text::to_lower(text::trim(o.text))) ++key_hits;
        }
        if (q.options.size() >= 2 && key_hits != 1) {
            c.question(q, "mc_key_not_option", "answer_key must equal exactly one option label or option text");
        }
    }

    const bool in_anchor_file = file_month == 0;
    if (in_anchor_file && q.category != Category::anchor) {
        c.question(q, "anchor_category", "items in anchor.json must have category anchor");
    }
    if (!in_anchor_file && q.category == Category::anchor) {
        c.question(q, "anchor_outside_anchor_file", "anchor items belong in anchor.json");
    }
    if (!in_anchor_file && file_month != q.month) {
        c.question(q, "question_misplaced",
                   "month " + std::to_string(q.month) + " item stored in the file for month " +
                       std::to_string(file_month));
    }
    if (q.category == Category::weekly) {
        if (!q.week || *q.week < 1 || *q.week > kTeachingWeeks) {
            c.question(q, "weekly_bad_week", "weekly items need a week in 1-3");
        }
    }
    if (q.category != Category::trap && q.trap_source_id) {
        c.question(q, "unexpected_trap_source", "only trap items may carry trap_source_id");
    }
    if (q.category == Category::trap) {
        if (!q.trap_source_id) {
            c.question(q, "trap_missing_source", "trap item has no trap_source_id");
            return;
        }
        const auto* src = bank.find(*q.trap_source_id);
        if (!src) {
            c.question(q, "trap_dangling_source", "trap_source_id '" + *q.trap_source_id + "' does not resolve");
            return;
        }
        if (src->category != Category::weekly) {
            c.question(q, "trap_source_not_weekly", "trap source " + src->id + " is not a weekly question");
        }
        if (src->month > q.month) {
            c.question(q, "trap_source_in_future",
                       "trap source " + src->id + " belongs to a later month than the trap");
        }
        auto trap_key = assess::normalize_answer(q.answer_key, q);
        if (!trap_key.empty() && trap_key == assess::stale_answer(q, bank)) {
            c.question(q, "trap_key_not_flipped", "trap must flip answer: key equals the source's key");
        }
    }
}

void check_pools(const QuestionBank& bank, Collector& c) {
    std::map<std::pair<int, int>, std::size_t> weekly;
    std::map<int, std::size_t> review_pool, trap_pool, integration_pool;
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const auto& q = bank.questions[i];
        if (i < bank.question_file_month.size() && bank.question_file_month[i] == 0) continue;
        if (q.category == Category::weekly && q.week) weekly[{q.month, *q.week}] += 1;
        if (q.category == Category::weekly || q.category == Category::review) review_pool[q.month] += 1;
        if (q.category == Category::weekly || q.category == Category::knowledge_integration) {
            integration_pool[q.month] += 1;
        }
        if (q.category == Category::trap) trap_pool[q.month] += 1;
    }
    std::size_t cumulative = 0;
    for (int m = 1; m <= kMonths; ++m) {
        const std::string month = "month " + std::to_string(m);
        for (int w = 1; w <= kTeachingWeeks; ++w) {
            auto n = weekly[{m, w}];
            if (n != kWeeklySize) {
                c.add("weekly_count", month + " week " + std::to_string(w) + " has " + std::to_string(n) +
                                          " weekly questions, expected " + std::to_string(kWeeklySize));
            }
        }
        if (review_pool[m] < kReviewSize) {
            c.add("review_pool_short", month + " has " + std::to_string(review_pool[m]) +
                                           " review-eligible items, need " + std::to_string(kReviewSize));
        }
        if (trap_pool[m] < kTrapSize) {
            c.add("trap_pool_short", month + " has " + std::to_string(trap_pool[m]) + " trap items, need " +
                                         std::to_string(kTrapSize));
        }
        cumulative += integration_pool[m];
        if (cumulative < kIntegrationSize + std::min(review_pool[m], kReviewSize)) {
            c.add("integration_pool_short",
                  month + " has too few knowledge-integration candidates after review selection");
        }
    }
}

}  // namespace

ValidationReport validate_bank(const QuestionBank& bank) {
    Collector c;
    std::map<std::string, int> ids;
    for (const auto& q : bank.questions) ids[q.id] += 1;
    std::set<std::string> reported;
    for (const auto& q : bank.questions) {
        if (ids[q.id] > 1 && reported.insert(q.id).second) {
            c.add("duplicate_id", "question id " + q.id + " appears " + std::to_string(ids[q.id]) + " times", q.id);
        }
    }
    check_knowledge_points(bank, c);
    for (std::size_t i = 0; i < bank.questions.size(); ++i) check_question(bank, i, c);
    check_pools(bank, c);
    if (bank.anchor_ids.size() != kAnchorSize) {
        c.add("anchor_count", "anchor exam has " + std::to_string(bank.anchor_ids.size()) + " items, expected " +
                                  std::to_string(kAnchorSize));
    }
    ValidationReport r;
    r.violations = std::move(c.out);
    r.is_valid = r.violations.empty();
    return r;
}

}  // namespace lsim::corpus
