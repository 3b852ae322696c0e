#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace lsim::analytics {

/// Mean number of whitespace-separated tokens per reasoning; 0 for no reasonings.
double reasoning_length(const std::vector<std::string>& reasonings);

enum class ConnectorType { causal, contrastive, additive };
inline constexpr std::array<ConnectorType, 3> kConnectorTypes = {ConnectorType::causal, ConnectorType::contrastive,
                                                                 ConnectorType::additive};
std::string_view to_string(ConnectorType t);

struct ConnectorLexicon {
    std::vector<std::string> causal;
    std::vector<std::string> contrastive;
    std::vector<std::string> additive;

    const std::vector<std::string>& of(ConnectorType t) const;
    /// Throws lsim::Error when an entry is empty or appears in two lists.
    void validate() const;

    static ConnectorLexicon defaults();
    static ConnectorLexicon from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ConnectorCounts {
    std::array<long, 3> counts{};  // indexed like kConnectorTypes

    long total() const { return counts[0] + counts[1] + counts[2]; }
    ConnectorCounts& operator+=(const ConnectorCounts& o);
};

/// Whole-word, case-insensitive occurrences; longer phrases win over words they contain.
ConnectorCounts count_connectors(std::string_view text, const ConnectorLexicon& lex);

struct ConnectorStats {
    ConnectorCounts counts;
    std::size_t reasonings = 0;
    double avg_per_reasoning = 0.0;
    /// Share of each type; all zero when no connector occurs, otherwise sums to 1.
    std::array<double, 3> distribution{};
};

ConnectorStats connector_stats(const std::vector<std::string>& reasonings, const ConnectorLexicon& lex);

struct Trend {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares over (month, value). Throws lsim::Error with fewer than
/// two points or when every month is the same.
Trend fit_trend(const std::vector<std::pair<double, double>>& points);

struct ChoiceTally {
    long work = 0;
    long rest = 0;

    long total() const { return work + rest; }
    double work_fraction() const { return total() ? static_cast<double>(work) / static_cast<double>(total()) : 0.0; }
    double rest_fraction() const { return total() ? static_cast<double>(rest) / static_cast<double>(total()) : 0.0; }
};

struct StudyRest {
    std::map<std::string, ChoiceTally> by_kind;  // consolidation, reflection, pre_exam_review
    ChoiceTally overall;
};

/// Work/rest split of every choice event, per learner. `events` are full event
/// records ({kind, payload, ...}); other kinds are ignored.
std::map<std::string, StudyRest> study_rest_ratio(const std::vector<nlohmann::json>& events);

}  // namespace lsim::analytics
