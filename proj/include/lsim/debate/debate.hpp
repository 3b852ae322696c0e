#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lsim/agents/invoker.hpp"
#include "lsim/assess/grading.hpp"
#include "lsim/corpus/exam.hpp"

namespace lsim::debate {

inline constexpr int kDefaultRoundCap = 4;  // k_d

struct Disagreement {
    std::string question_id;
    std::string a;  // earlier in learner order; speaks first
    std::string b;
};

/// Every learner pair whose normalized answers differ on an exam item (a blank
/// answer counts as an answer). Ordered by exam position, then learner order of
/// `attempts`. With a cap, a seeded sample of that many is kept in the same order.
std::vector<Disagreement> find_disagreements(const corpus::Exam& exam,
                                             const std::vector<assess::GradedAttempt>& attempts,
                                             std::optional<std::size_t> cap, std::uint64_t seed);

enum class OutcomeKind { persuaded, both_held, converged, round_cap };
std::string_view to_string(OutcomeKind k);

struct Outcome {
    OutcomeKind kind = OutcomeKind::round_cap;
    std::optional<std::string> winner;  // persuaded only
    std::optional<std::string> loser;

    bool operator==(const Outcome&) const = default;
};

struct Statement {
    int round_index = 1;
    std::string speaker;
    std::string statement;
    std::optional<std::string> stated_answer;  // revised answer if the speaker conceded

    bool operator==(const Statement&) const = default;
};

struct ModeratorDecision {
    int after_round = 1;
    bool end = false;
    std::string reason;
    bool parsed = true;

    bool operator==(const ModeratorDecision&) const = default;
};

/// All answers held here are normalized (assess::normalize_answer).
struct DebateTranscript {
    std::string debate_id;
    int month = 0;
    std::string question_id;
    std::array<std::string, 2> participants;
    std::array<std::string, 2> initial_answers;
    std::string answer_key;
    int round_cap = kDefaultRoundCap;
    std::vector<Statement> rounds;  // one element per statement
    std::vector<ModeratorDecision> moderator_decisions;
    std::array<std::string, 2> final_answers;
    Outcome outcome;

    /// Highest round_index reached; 0 when nobody spoke.
    int round_count() const;

    bool operator==(const DebateTranscript&) const = default;
};

nlohmann::json to_json(const DebateTranscript& t);
DebateTranscript transcript_from_json(const nlohmann::json& j);

/// Revised answer if `statement` contains the concession phrase ("I'm convinced.
/// Now I believe the answer is X"): case-insensitive, the span after "the answer is"
/// up to a newline or sentence end, quotes and terminal punctuation removed,
/// original case kept. "not convinced" never counts.
std::optional<std::string> detect_answer_change(std::string_view statement);

/// Last normalized stated answer per participant, else the initial answer.
std::array<std::string, 2> final_answers_of(const DebateTranscript& t, const corpus::Question& q);

/// Outcome from the transcript alone:
///  - first concession ends the debate: persuaded(other, conceder) when the revised
///    answer equals the other's initial answer, otherwise converged;
///  - a moderator "end" before the cap: converged when the reason mentions
///    similar/repetitive/converged views, otherwise both_held;
///  - otherwise round_cap.
Outcome classify_outcome(const DebateTranscript& t);

/// Prose thread stored as a debate_record.
std::string render_thread(const DebateTranscript& t);

struct DebateSetup {
    std::string debate_id;
    int month = 0;
    const corpus::Question* question = nullptr;
    int round_cap = kDefaultRoundCap;
};

struct Participant {
    agents::AgentContext* ctx = nullptr;
    std::string answer;  // as given on the exam
    std::string reasoning;
};

/// Alternating rounds (A then B) until a concession, a moderator "end", or the
/// round cap. The moderator (teacher context) rules after every completed round.
/// Emits debate_round / moderator_decision / debate_result events and stores a
/// debate_record in both participants' long-term memory.
DebateTranscript run_debate(const DebateSetup& setup, Participant a, Participant b, agents::AgentContext& moderator);

struct Ratio {
    long num = 0;
    long den = 0;
    /// Percentage; nullopt when den == 0.
    std::optional<double> rate() const;

    bool operator==(const Ratio&) const = default;
};

struct LearnerDebateStats {
    Ratio persuasion;
    Ratio resist_wrong;
    Ratio accept_correct;

    bool operator==(const LearnerDebateStats&) const = default;
};

using DebateOutcomeStats = std::map<std::string, LearnerDebateStats>;

/// Persuasion, Resist Wrong and Accept Correct tallies per learner over the transcripts' initial/final answers and key.
DebateOutcomeStats compute_debate_stats(const std::vector<DebateTranscript>& transcripts);

nlohmann::json to_json(const DebateOutcomeStats& s);

}  // namespace lsim::debate
