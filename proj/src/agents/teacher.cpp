#include "lsim/agents/teacher.hpp"

#include "lsim/agents/learner.hpp"

namespace lsim::agents {

using nlohmann::json;

std::string teach(AgentContext& teacher, const corpus::KnowledgePoint& kp) {
    const auto prompt = teacher.templates->render(
        "weekly_teaching", {{0, std::to_string(kp.month)}, {1, std::to_string(kp.week)}, {2, kp.teaching_content}});
    const json context = {
        {"month", kp.month}, {"week", kp.week}, {"topic", kp.topic}, {"content", kp.teaching_content}};
    auto lesson = invoke(teacher, "weekly_teaching", prompt, context).text;
    teacher.sink->emit("lesson", {{"month", kp.month}, {"week", kp.week}, {"topic", kp.topic}, {"text", lesson}});
    return lesson;
}

std::string explain(AgentContext& teacher, int month, int week, int batch,
                    const std::vector<const corpus::Question*>& questions) {
    std::string listing = render_questions(questions);
    for (std::size_t i = 0; i < questions.size(); ++i) {
        listing += "\nAnswer to Question " + std::to_string(i + 1) + ": " + questions[i]->answer_key;
    }
    const auto prompt = teacher.templates->render(
        "weekly_exercise_teacher",
        {{0, std::to_string(month)}, {1, std::to_string(week)}, {2, std::to_string(batch)}, {3, listing}});
    json ids = json::array();
    for (const auto* q : questions) ids.push_back(q->id);
    const json context = {{"month", month}, {"week", week}, {"batch", batch}, {"question_ids", ids}};
    auto text = invoke(teacher, "weekly_exercise_teacher", prompt, context).text;
    teacher.sink->emit("explanation",
                       {{"month", month}, {"week", week}, {"batch", batch}, {"question_ids", ids}, {"text", text}});
    return text;
}

}  // namespace lsim::agents
