#include <set>

#include "lsim/assess/grading.hpp"
#include "lsim/error.hpp"

namespace lsim::assess {

using nlohmann::json;

GradedAttempt grade(const std::vector<GivenAnswer>& answers, const corpus::Exam& exam,
                    const corpus::QuestionBank& bank, std::string learner_id) {
    std::map<std::string, const GivenAnswer*, std::less<>> by_id;
    std::set<std::string, std::less<>> on_exam;
    for (const auto& it : exam.items) on_exam.insert(it.question_id);
    for (const auto& a : answers) {
        if (!on_exam.count(a.question_id)) {
            throw Error("answer references question '" + a.question_id + "' which is not on exam " + exam.exam_id);
        }
        by_id.emplace(a.question_id, &a);
    }

    GradedAttempt g;
    g.exam_id = exam.exam_id;
    g.exam_kind = exam.kind;
    g.learner_id = std::move(learner_id);
    std::map<std::string, int> correct_by_cat;
    int correct = 0;
    for (const auto& item : exam.items) {
        const auto& q = bank.at(item.question_id);
        GradedItem gi;
        gi.question_id = item.question_id;
        gi.section = item.section;
        if (auto it = by_id.find(item.question_id); it != by_id.end()) {
            gi.given = it->second->answer;
            gi.reasoning = it->second->reasoning;
            gi.confidence = it->second->confidence;
        }
        gi.normalized = normalize_answer(gi.given, q);
        gi.correct = !gi.normalized.empty() && gi.normalized == normalize_answer(q.answer_key, q);
        std::string cat(corpus::to_string(item.section));
        g.category_sizes[cat] += 1;
        correct_by_cat[cat] += gi.correct ? 1 : 0;
        correct += gi.correct ? 1 : 0;
        g.items.push_back(std::move(gi));
    }
    const auto n = static_cast<double>(exam.items.size());
    g.score = exam.items.empty() ? 0.0 : 100.0 * correct / n;
    for (const auto& [cat, size] : g.category_sizes) {
        g.by_category[cat] = 100.0 * correct_by_cat[cat] / static_cast<double>(size);
    }
    return g;
}

std::string stale_answer(const corpus::Question& trap, const corpus::QuestionBank& bank) {
    if (!trap.trap_source_id) return {};
    const auto* src = bank.find(*trap.trap_source_id);
    if (!src) return {};
    return normalize_answer(src->answer_key, trap);
}

std::vector<TrapFlag> trap_diagnosis(const GradedAttempt& attempt, const corpus::QuestionBank& bank) {
    std::vector<TrapFlag> out;
    for (const auto& item : attempt.items) {
        if (item.section != corpus::Category::trap) continue;
        const auto& q = bank.at(item.question_id);
        TrapFlag f;
        f.trap_id = q.id;
        f.source_id = q.trap_source_id.value_or("");
        auto stale = stale_answer(q, bank);
        f.gave_stale_source_answer = !stale.empty() && item.normalized == stale;
        out.push_back(std::move(f));
    }
    return out;
}

json to_json(const GradedAttempt& g) {
    json items = json::array();
    for (const auto& it : g.items) {
        json j = {{"question_id", it.question_id},
                  {"section", corpus::to_string(it.section)},
                  {"given", it.given},
                  {"normalized", it.normalized},
                  {"correct", it.correct},
                  {"reasoning", it.reasoning}};
        if (it.confidence) j["confidence"] = *it.confidence;
        items.push_back(std::move(j));
    }
    return {{"exam_id", g.exam_id},
            {"exam_kind", corpus::to_string(g.exam_kind)},
            {"learner_id", g.learner_id},
            {"items", std::move(items)},
            {"totals", {{"score", g.score}, {"by_category", g.by_category}, {"category_sizes", g.category_sizes}}}};
}

GradedAttempt graded_from_json(const json& j) {
    GradedAttempt g;
    g.exam_id = j.at("exam_id").get<std::string>();
    g.exam_kind = corpus::parse_exam_kind(j.at("exam_kind").get<std::string>()).value();
    g.learner_id = j.at("learner_id").get<std::string>();
    for (const auto& it : j.at("items")) {
        GradedItem gi;
        gi.question_id = it.at("question_id").get<std::string>();
        gi.section = corpus::parse_category(it.at("section").get<std::string>()).value();
        gi.given = it.at("given").get<std::string>();
        gi.normalized = it.at("normalized").get<std::string>();
        gi.correct = it.at("correct").get<bool>();
        gi.reasoning = it.at("reasoning").get<std::string>();
        if (it.contains("confidence")) gi.confidence = it["confidence"].get<int>();
        g.items.push_back(std::move(gi));
    }
    const auto& t = j.at("totals");
    g.score = t.at("score").get<double>();
    g.by_category = t.at("by_category").get<std::map<std::string, double>>();
    g.category_sizes = t.at("category_sizes").get<std::map<std::string, int>>();
    return g;
}

}  // namespace lsim::assess
