#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsim/agents/backend.hpp"
#include "lsim/agents/profiles.hpp"
#include "lsim/corpus/question_bank.hpp"

namespace lsim::agents {

/// Rule-driven behaviour of one persona under the scripted backend.
///
/// The defaults are chosen so the personas separate the way the persona texts
/// describe: the deep policy answers correctly with probability 0.9 everywhere,
/// the surface policy always answers current-month items correctly but reuses
/// the memorised source answer on every trap, the lazy policy mostly guesses and
/// rests on about a quarter of its choices, and the general policy answers
/// correctly with probability 0.75. Tests assert structure, never these values.
struct PersonaPolicy {
    double p_current = 0.75;           // items from the exam's own month (all weekly items)
    double p_prior = 0.75;             // earlier-month items and anchor items
    double p_trap = 0.75;              // trap items
    double p_stale_when_wrong = 0.5;   // a missed trap is answered with its source's key
    double rest_probability = 0.0;     // per strategic choice
    double concede_to_correct = 0.5;   // debate: I am wrong, the peer is right
    double concede_to_wrong = 0.1;     // debate: I am right, the peer is wrong
    double concede_both_wrong = 0.2;
    double score_sensitivity = 0.3;    // self-concept reaction to my own score change
    double peer_sensitivity = 0.1;     // reaction to my gap from the peer mean
    int initial_self_concept = 50;     // first scripted self-assessment
};

PersonaPolicy default_policy(LearnerId id);

enum class ModeratorMode { adaptive, always_continue, always_end };

struct ScriptedConfig {
    std::uint64_t seed = 0;
    std::map<std::string, PersonaPolicy> personas;  // keyed by learner id; missing ids use defaults
    ModeratorMode moderator = ModeratorMode::adaptive;
    double moderator_end_probability = 0.35;  // adaptive mode, from round 2 on

    const PersonaPolicy& policy(const std::string& learner) const;
    nlohmann::json to_json() const;
    /// Overlay a JSON description (as written by to_json) on the defaults.
    static ScriptedConfig from_json(const nlohmann::json& j, std::uint64_t seed);
};

/// Deterministic stand-in for a generative model. Every reply is a pure function
/// of (seed, template_id, request context), so concurrent callers and call order
/// never change the output.
class ScriptedBackend : public Backend {
  public:
    ScriptedBackend(std::shared_ptr<const corpus::QuestionBank> bank, ScriptedConfig config);

    Completion complete(const ChatRequest& request) override;
    nlohmann::json describe() const override;

    const ScriptedConfig& config() const { return config_; }

    /// Scripted choice between an item's key, its trap source's key, and a distractor.
    std::string answer_for(const std::string& learner, const std::string& exam_id, const corpus::Question& q,
                           int exam_month) const;

  private:
    std::string answers_reply(const nlohmann::json& ctx) const;
    std::string choice_reply(const nlohmann::json& ctx, const std::string& template_id) const;
    std::string self_concept_reply(const nlohmann::json& ctx) const;
    std::string debate_reply(const nlohmann::json& ctx) const;
    std::string moderator_reply(const nlohmann::json& ctx) const;
    std::string lesson_reply(const nlohmann::json& ctx) const;
    std::string notes_reply(const nlohmann::json& ctx) const;
    std::string explanation_reply(const nlohmann::json& ctx) const;
    std::string review_reply(const nlohmann::json& ctx) const;
    std::string trap_reply(const nlohmann::json& ctx) const;

    std::string distractor(const corpus::Question& q, std::uint64_t draw) const;
    std::string topic_of(const corpus::Question& q) const;

    std::shared_ptr<const corpus::QuestionBank> bank_;
    ScriptedConfig config_;
    std::map<corpus::Format, std::vector<std::string>> keys_by_format_;
};

/// Switch a participle key to its -ing form and vice versa ("broken" <-> "breaking")
/// using a small built-in verb table; other forms map to the -ing form.
std::optional<std::string> flip_verb_form(const std::string& key);

}  // namespace lsim::agents
