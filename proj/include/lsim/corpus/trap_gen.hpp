#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsim/agents/backend.hpp"
#include "lsim/agents/templates.hpp"
#include "lsim/corpus/question_bank.hpp"

namespace lsim::corpus {

/// A generated trap candidate. Drafts are never added to the bank; a person has
/// to verify them first.
struct TrapDraft {
    std::string source_id;
    Question question;  // category trap, linked to its source
    bool accepted = false;
    std::string rejection;  // why the companion check refused it
    bool verified = false;  // always false when produced here
    std::string raw;        // backend reply
};

nlohmann::json to_json(const TrapDraft& d);

/// Reason a draft fails the trap checks (empty stem, missing key, key equal to the
/// source's after normalization, bad options), or nullopt when it passes.
std::optional<std::string> check_trap_draft(const Question& draft, const Question& source);

/// One backend call per source using the trap_generation template. Throws
/// lsim::Error for an unknown or non-weekly source, SchemaError for an
/// unparseable reply, BackendError when the backend fails.
std::vector<TrapDraft> generate_trap_candidates(const QuestionBank& bank, const std::vector<std::string>& source_ids,
                                                agents::Backend& backend, const agents::TemplateLibrary& templates);

}  // namespace lsim::corpus
