#pragma once

#include <string>
#include <vector>

#include "lsim/agents/invoker.hpp"
#include "lsim/corpus/question_bank.hpp"

namespace lsim::agents {

/// Lesson for one knowledge point; emits a lesson event.
std::string teach(AgentContext& teacher, const corpus::KnowledgePoint& kp);

/// Explanation of one graded batch of a weekly test; emits an explanation event.
/// The caller stores the text as teacher_feedback for every learner.
std::string explain(AgentContext& teacher, int month, int week, int batch,
                    const std::vector<const corpus::Question*>& questions);

}  // namespace lsim::agents
