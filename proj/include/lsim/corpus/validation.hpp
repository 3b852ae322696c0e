#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsim/corpus/question_bank.hpp"

namespace lsim::corpus {

struct Violation {
    std::string code;
    std::string message;
    std::optional<std::string> question_id;
};

struct ValidationReport {
    bool is_valid = true;
    std::vector<Violation> violations;

    nlohmann::json to_json() const;
};

/// Check every structural invariant of the corpus. Violations are data, so this never throws.
ValidationReport validate_bank(const QuestionBank& bank);

}  // namespace lsim::corpus
