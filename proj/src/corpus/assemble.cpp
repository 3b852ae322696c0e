#include <cstdio>
#include <set>

#include "lsim/corpus/exam.hpp"
#include "lsim/error.hpp"
#include "lsim/util/rng.hpp"

namespace lsim::corpus {

using nlohmann::json;

std::string_view to_string(ExamKind k) {
    switch (k) {
        case ExamKind::initial: return "initial";
        case ExamKind::final: return "final";
        case ExamKind::weekly: return "weekly";
        case ExamKind::monthly: return "monthly";
    }
    return "?";
}

std::optional<ExamKind> parse_exam_kind(std::string_view s) {
    for (auto k : {ExamKind::initial, ExamKind::final, ExamKind::weekly, ExamKind::monthly}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string exam_id_for(ExamKind kind, std::optional<int> month, std::optional<int> week) {
    char buf[32];
    switch (kind) {
        case ExamKind::initial: return "initial";
        case ExamKind::final: return "final";
        case ExamKind::weekly:
            std::snprintf(buf, sizeof buf, "weekly-m%02dw%d", month.value_or(0), week.value_or(0));
            return buf;
        case ExamKind::monthly:
            std::snprintf(buf, sizeof buf, "monthly-m%02d", month.value_or(0));
            return buf;
    }
    return "?";
}

json to_json(const Exam& exam) {
    json items = json::array();
    for (const auto& it : exam.items) items.push_back({{"question_id", it.question_id}, {"section", to_string(it.section)}});
    json sections = json::array();
    for (const auto& s : exam.sections) {
        sections.push_back({{"category", to_string(s.category)}, {"begin", s.begin}, {"end", s.end}});
    }
    json j = {{"exam_id", exam.exam_id}, {"kind", to_string(exam.kind)}};
    if (exam.month) j["month"] = *exam.month;
    if (exam.week) j["week"] = *exam.week;
    j["items"] = std::move(items);
    j["section_boundaries"] = std::move(sections);
    return j;
}

Exam exam_from_json(const json& j) {
    Exam e;
    e.exam_id = j.at("exam_id").get<std::string>();
    e.kind = parse_exam_kind(j.at("kind").get<std::string>()).value();
    if (j.contains("month")) e.month = j["month"].get<int>();
    if (j.contains("week")) e.week = j["week"].get<int>();
    for (const auto& it : j.at("items")) {
        e.items.push_back({it.at("question_id").get<std::string>(),
                           parse_category(it.at("section").get<std::string>()).value()});
    }
    for (const auto& s : j.at("section_boundaries")) {
        e.sections.push_back({parse_category(s.at("category").get<std::string>()).value(),
                              s.at("begin").get<std::size_t>(), s.at("end").get<std::size_t>()});
    }
    return e;
}

namespace {

void append_section(Exam& exam, Category cat, const std::vector<std::string>& ids) {
    Section s{cat, exam.items.size(), exam.items.size() + ids.size()};
    for (const auto& id : ids) exam.items.push_back({id, cat});
    exam.sections.push_back(s);
}

std::vector<std::string> take(rng::Stream& rng, std::vector<std::string> pool, std::size_t n, const std::string& what) {
    if (pool.size() < n) {
        throw Error("insufficient eligible items for " + what + ": have " + std::to_string(pool.size()) + ", need " +
                    std::to_string(n));
    }
    return rng.sample(std::move(pool), n);
}

bool from_month_file(const QuestionBank& bank, std::size_t i) {
    return i >= bank.question_file_month.size() || bank.question_file_month[i] != 0;
}

}  // namespace

Exam assemble_exam(const QuestionBank& bank, ExamKind kind, std::optional<int> month, std::optional<int> week,
                   std::uint64_t seed) {
    Exam exam;
    exam.kind = kind;
    exam.exam_id = exam_id_for(kind, month, week);

    if (kind == ExamKind::initial || kind == ExamKind::final) {
        if (month || week) throw Error("anchor exams take no month or week");
        if (bank.anchor_ids.size() < kAnchorSize) {
            throw Error("insufficient eligible items for the anchor exam: have " + std::to_string(bank.anchor_ids.size()));
        }
        std::vector<std::string> ids(bank.anchor_ids.begin(), bank.anchor_ids.begin() + kAnchorSize);
        append_section(exam, Category::anchor, ids);
        return exam;
    }

    if (!month || *month < 1 || *month > kMonths) throw Error("weekly and monthly exams need a month in 1-12");
    const int m = *month;
    exam.month = m;
    rng::Stream rng(rng::derive(seed, {"assemble", to_string(kind), std::to_string(m), std::to_string(week.value_or(0))}));

    if (kind == ExamKind::weekly) {
        if (!week || *week < 1 || *week > kTeachingWeeks) throw Error("weekly exams need a week in 1-3");
        exam.week = week;
        std::vector<std::string> pool;
        for (std::size_t i = 0; i < bank.questions.size(); ++i) {
            const auto& q = bank.questions[i];
            if (from_month_file(bank, i) && q.category == Category::weekly && q.month == m && q.week == week) {
                pool.push_back(q.id);
            }
        }
        append_section(exam, Category::weekly, take(rng, std::move(pool), kWeeklySize, exam.exam_id));
        return exam;
    }

    if (week) throw Error("monthly exams take no week");
    std::vector<std::string> review_pool, trap_pool;
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const auto& q = bank.questions[i];
        if (!from_month_file(bank, i)) continue;
        if ((q.category == Category::weekly || q.category == Category::review) && q.month == m) review_pool.push_back(q.id);
        if (q.category == Category::trap && q.month == m && q.trap_source_id) {
            const auto* src = bank.find(*q.trap_source_id);
            if (src && src->month <= m) trap_pool.push_back(q.id);
        }
    }
    auto review = take(rng, std::move(review_pool), kReviewSize, exam.exam_id + " review section");
    auto traps = take(rng, std::move(trap_pool), kTrapSize, exam.exam_id + " trap section");
    std::set<std::string> used(review.begin(), review.end());
    std::vector<std::string> ki_pool;
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const auto& q = bank.questions[i];
        if (!from_month_file(bank, i) || q.month > m || q.month < 1 || used.count(q.id)) continue;
        if (q.category == Category::weekly || q.category == Category::knowledge_integration) ki_pool.push_back(q.id);
    }
    auto ki = take(rng, std::move(ki_pool), kIntegrationSize, exam.exam_id + " knowledge-integration section");
    append_section(exam, Category::review, review);
    append_section(exam, Category::trap, traps);
    append_section(exam, Category::knowledge_integration, ki);
    return exam;
}

}  // namespace lsim::corpus
