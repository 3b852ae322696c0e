#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsim/agents/invoker.hpp"
#include "lsim/agents/structured.hpp"
#include "lsim/assess/grading.hpp"
#include "lsim/corpus/exam.hpp"
#include "lsim/memory/retrieval.hpp"

namespace lsim::agents {

inline constexpr std::size_t kBatchSize = 5;

/// Template used to answer an exam of this kind.
std::string exam_template(corpus::ExamKind kind);
bool exam_wants_confidence(corpus::ExamKind kind);

/// "Question n (format): stem" lines, with options for multiple-choice items.
std::string render_questions(const std::vector<const corpus::Question*>& batch);

/// Answer `exam` in batches of kBatchSize. `slots` fills every template slot except
/// <INPUT 3>, which carries the batch's questions. A batch that cannot be parsed
/// after the repair rounds is answered blank (confidence 0, reasoning = raw reply).
/// Emits one answer_batch event per batch.
std::vector<assess::GivenAnswer> take_exam(AgentContext& ctx, const corpus::Exam& exam,
                                           const corpus::QuestionBank& bank, const Bindings& slots);

/// Study a lesson and keep the notes as a week-tagged knowledge_summary.
std::string study(AgentContext& ctx, const corpus::KnowledgePoint& kp, const std::string& lesson);

/// Consolidation/reflection take the material to summarise; pre-exam review takes
/// nothing. Work choices on consolidation/reflection are stored in long-term memory.
/// An unparseable reply counts as rest and raises a warning. Emits a choice event.
StrategicChoice strategic_choice(AgentContext& ctx, ChoiceKind kind, int month, const std::string& material);

/// Review session after a work pre-exam choice; the reply joins the monthly-exam bundle.
std::string pre_exam_review(AgentContext& ctx, int month, const std::string& materials);

/// Self-concept evaluation from a self_concept_eval bundle. The score is clamped to
/// [0, 100]; on a parse failure the previous score is carried forward (or, with no
/// history, the profile's initial score, else 50). Stored as self_concept_record.
SelfConceptUpdate update_self_concept(AgentContext& ctx, int month, const memory::MemoryBundle& bundle,
                                      std::optional<int> fallback_initial);

}  // namespace lsim::agents
