#include "lsim/agents/scripted_backend.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "lsim/assess/grading.hpp"
#include "lsim/error.hpp"
#include "lsim/util/rng.hpp"
#include "lsim/util/text.hpp"

namespace lsim::agents {

using nlohmann::json;

PersonaPolicy default_policy(LearnerId id) {
    PersonaPolicy p;
    switch (id) {
        case LearnerId::deep:
            p.p_current = p.p_prior = p.p_trap = 0.9;
            p.p_stale_when_wrong = 0.3;
            p.rest_probability = 0.0;
            p.concede_to_correct = 0.55;
            p.concede_to_wrong = 0.02;
            p.concede_both_wrong = 0.15;
            p.score_sensitivity = 0.05;
            p.peer_sensitivity = 0.02;
            p.initial_self_concept = 80;
            break;
        case LearnerId::surface:
            p.p_current = 1.0;
            p.p_prior = 0.6;
            p.p_trap = 0.0;
            p.p_stale_when_wrong = 1.0;
            p.rest_probability = 0.05;
            p.concede_to_correct = 0.65;
            p.concede_to_wrong = 0.15;
            p.concede_both_wrong = 0.25;
            p.score_sensitivity = 0.5;
            p.peer_sensitivity = 0.2;
            p.initial_self_concept = 60;
            break;
        case LearnerId::lazy:
            p.p_current = 0.5;
            p.p_prior = 0.4;
            p.p_trap = 0.3;
            p.p_stale_when_wrong = 0.8;
            p.rest_probability = 0.241;
            p.concede_to_correct = 0.7;
            p.concede_to_wrong = 0.3;
            p.concede_both_wrong = 0.35;
            p.score_sensitivity = 0.4;
            p.peer_sensitivity = 0.3;
            p.initial_self_concept = 40;
            break;
        case LearnerId::general:
            p.p_current = p.p_prior = p.p_trap = 0.75;
            p.p_stale_when_wrong = 0.6;
            p.rest_probability = 0.02;
            p.concede_to_correct = 0.5;
            p.concede_to_wrong = 0.08;
            p.concede_both_wrong = 0.2;
            p.score_sensitivity = 0.3;
            p.peer_sensitivity = 0.1;
            p.initial_self_concept = 55;
            break;
    }
    return p;
}

const PersonaPolicy& ScriptedConfig::policy(const std::string& learner) const {
    if (auto it = personas.find(learner); it != personas.end()) return it->second;
    static const std::map<std::string, PersonaPolicy> defaults = [] {
        std::map<std::string, PersonaPolicy> m;
        for (auto id : all_learners()) m[std::string(to_string(id))] = default_policy(id);
        return m;
    }();
    if (auto it = defaults.find(learner); it != defaults.end()) return it->second;
    throw Error("scripted backend has no policy for learner '" + learner + "'");
}

namespace {

std::string_view to_string(ModeratorMode m) {
    switch (m) {
        case ModeratorMode::adaptive: return "adaptive";
        case ModeratorMode::always_continue: return "always_continue";
        case ModeratorMode::always_end: return "always_end";
    }
    return "?";
}

json policy_json(const PersonaPolicy& p) {
    return {{"p_current", p.p_current},
            {"p_prior", p.p_prior},
            {"p_trap", p.p_trap},
            {"p_stale_when_wrong", p.p_stale_when_wrong},
            {"rest_probability", p.rest_probability},
            {"concede_to_correct", p.concede_to_correct},
            {"concede_to_wrong", p.concede_to_wrong},
            {"concede_both_wrong", p.concede_both_wrong},
            {"score_sensitivity", p.score_sensitivity},
            {"peer_sensitivity", p.peer_sensitivity},
            {"initial_self_concept", p.initial_self_concept}};
}

void overlay(PersonaPolicy& p, const json& j) {
    p.p_current = j.value("p_current", p.p_current);
    p.p_prior = j.value("p_prior", p.p_prior);
    p.p_trap = j.value("p_trap", p.p_trap);
    p.p_stale_when_wrong = j.value("p_stale_when_wrong", p.p_stale_when_wrong);
    p.rest_probability = j.value("rest_probability", p.rest_probability);
    p.concede_to_correct = j.value("concede_to_correct", p.concede_to_correct);
    p.concede_to_wrong = j.value("concede_to_wrong", p.concede_to_wrong);
    p.concede_both_wrong = j.value("concede_both_wrong", p.concede_both_wrong);
    p.score_sensitivity = j.value("score_sensitivity", p.score_sensitivity);
    p.peer_sensitivity = j.value("peer_sensitivity", p.peer_sensitivity);
    p.initial_self_concept = j.value("initial_self_concept", p.initial_self_concept);
}

}  // namespace

json ScriptedConfig::to_json() const {
    json personas_json = json::object();
    for (auto id : all_learners()) {
        auto key = std::string(agents::to_string(id));
        personas_json[key] = policy_json(policy(key));
    }
    return {{"personas", personas_json},
            {"moderator", to_string(moderator)},
            {"moderator_end_probability", moderator_end_probability}};
}

ScriptedConfig ScriptedConfig::from_json(const json& j, std::uint64_t seed) {
    ScriptedConfig c;
    c.seed = seed;
    for (auto id : all_learners()) c.personas[std::string(agents::to_string(id))] = default_policy(id);
    if (!j.is_object()) return c;
    if (j.contains("personas")) {
        for (const auto& [name, pj] : j["personas"].items()) {
            if (!c.personas.count(name)) throw Error("scripted policy for unknown learner '" + name + "'");
            overlay(c.personas[name], pj);
        }
    }
    if (j.contains("moderator")) {
        auto m = j["moderator"].get<std::string>();
        if (m == "adaptive") c.moderator = ModeratorMode::adaptive;
        else if (m == "always_continue") c.moderator = ModeratorMode::always_continue;
        else if (m == "always_end") c.moderator = ModeratorMode::always_end;
        else throw Error("unknown scripted moderator mode '" + m + "'");
    }
    c.moderator_end_probability = j.value("moderator_end_probability", c.moderator_end_probability);
    return c;
}

// ---------------------------------------------------------------------------

namespace {

struct VerbForms {
    std::array<const char*, 5> f;  // base, past, participle, -ing, third person
};

constexpr VerbForms kVerbs[] = {
    {{"break", "broke", "broken", "breaking", "breaks"}},   {{"write", "wrote", "written", "writing", "writes"}},
    {{"take", "took", "taken", "taking", "takes"}},         {{"give", "gave", "given", "giving", "gives"}},
    {{"eat", "ate", "eaten", "eating", "eats"}},            {{"see", "saw", "seen", "seeing", "sees"}},
    {{"speak", "spoke", "spoken", "speaking", "speaks"}},   {{"choose", "chose", "chosen", "choosing", "chooses"}},
    {{"drive", "drove", "driven", "driving", "drives"}},    {{"fall", "fell", "fallen", "falling", "falls"}},
    {{"forget", "forgot", "forgotten", "forgetting", "forgets"}},
    {{"ride", "rode", "ridden", "riding", "rides"}},        {{"steal", "stole", "stolen", "stealing", "steals"}},
    {{"throw", "threw", "thrown", "throwing", "throws"}},   {{"wear", "wore", "worn", "wearing", "wears"}},
    {{"begin", "began", "begun", "beginning", "begins"}},   {{"drink", "drank", "drunk", "drinking", "drinks"}},
    {{"sing", "sang", "sung", "singing", "sings"}},         {{"swim", "swam", "swum", "swimming", "swims"}},
    {{"grow", "grew", "grown", "growing", "grows"}},        {{"know", "knew", "known", "knowing", "knows"}},
    {{"draw", "drew", "drawn", "drawing", "draws"}},        {{"hide", "hid", "hidden", "hiding", "hides"}},
    {{"shake", "shook", "shaken", "shaking", "shakes"}},
};

std::uint64_t draw(std::uint64_t seed, std::initializer_list<std::string_view> parts) {
    return rng::derive(seed, parts);
}

double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

std::string str(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    return it->is_string() ? it->get<std::string>() : it->dump();
}

template <std::size_t N>
const char* pick(const std::array<const char*, N>& options, std::uint64_t h) {
    return options[h % N];
}

}  // namespace

std::optional<std::string> flip_verb_form(const std::string& key) {
    const auto k = text::to_lower(text::trim(key));
    for (const auto& v : kVerbs) {
        for (std::size_t i = 0; i < v.f.size(); ++i) {
            if (k == v.f[i]) return std::string(i == 3 ? v.f[2] : v.f[3]);
        }
    }
    return std::nullopt;
}

ScriptedBackend::ScriptedBackend(std::shared_ptr<const corpus::QuestionBank> bank, ScriptedConfig config)
    : bank_(std::move(bank)), config_(std::move(config)) {
    if (!bank_) throw Error("scripted backend needs a question bank");
    std::map<corpus::Format, std::set<std::string>> seen;
    for (const auto& q : bank_->questions) {
        if (q.format == corpus::Format::multiple_choice) continue;
        if (seen[q.format].insert(q.answer_key).second) keys_by_format_[q.format].push_back(q.answer_key);
    }
}

json ScriptedBackend::describe() const {
    return {{"type", "scripted"}, {"seed", config_.seed}, {"policy", config_.to_json()}};
}

Completion ScriptedBackend::complete(const ChatRequest& req) {
    const auto& id = req.template_id;
    const auto& ctx = req.context;
    Completion c;
    if (id == "weekly_exercise_learner" || id == "monthly_test" || id == "anchor_exam") c.text = answers_reply(ctx);
    else if (id == "choice_consolidation" || id == "choice_reflection" || id == "choice_pre_exam_review")
        c.text = choice_reply(ctx, id);
    else if (id == "self_concept") c.text = self_concept_reply(ctx);
    else if (id == "debate_learner") c.text = debate_reply(ctx);
    else if (id == "debate_moderator") c.text = moderator_reply(ctx);
    else if (id == "weekly_teaching") c.text = lesson_reply(ctx);
    else if (id == "weekly_learning") c.text = notes_reply(ctx);
    else if (id == "weekly_exercise_teacher") c.text = explanation_reply(ctx);
    else if (id == "pre_exam_review_session") c.text = review_reply(ctx);
    else if (id == "trap_generation") c.text = trap_reply(ctx);
    else c.text = "Noted.";
    return c;
}

std::string ScriptedBackend::topic_of(const corpus::Question& q) const {
    if (const auto* kp = bank_->knowledge_point(q.month, q.week.value_or(1))) return kp->topic;
    return "this grammar point";
}

std::string ScriptedBackend::distractor(const corpus::Question& q, std::uint64_t h) const {
    const auto key = assess::normalize_answer(q.answer_key, q);
    if (q.format == corpus::Format::multiple_choice) {
        std::vector<std::string> labels;
        for (const auto& o : q.options) {
            if (assess::normalize_answer(o.label, q) != key) labels.push_back(o.label);
        }
        if (labels.empty()) return "";
        return labels[h % labels.size()];
    }
    if (auto flipped = flip_verb_form(q.answer_key); flipped && assess::normalize_answer(*flipped, q) != key) {
        if (h % 2 == 0) return *flipped;
    }
    auto it = keys_by_format_.find(q.format);
    if (it == keys_by_format_.end() || it->second.empty()) return "";
    const auto& keys = it->second;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const auto& cand = keys[(h + k) % keys.size()];
        if (assess::normalize_answer(cand, q) != key) return cand;
    }
    return "";
}

std::string ScriptedBackend::answer_for(const std::string& learner, const std::string& exam_id,
                                        const corpus::Question& q, int exam_month) const {
    const auto& p = config_.policy(learner);
    const bool trap = q.category == corpus::Category::trap;
    double p_correct = trap ? p.p_trap : (exam_month > 0 && q.month == exam_month ? p.p_current : p.p_prior);
    const auto h = draw(config_.seed, {"answer", learner, exam_id, q.id});
    if (unit(h) < p_correct) return q.answer_key;
    const auto h2 = rng::splitmix64(h);
    if (trap && q.trap_source_id && unit(h2) < p.p_stale_when_wrong) {
        if (const auto* src = bank_->find(*q.trap_source_id)) return src->answer_key;
    }
    return distractor(q, rng::splitmix64(h2));
}

std::string ScriptedBackend::answers_reply(const json& ctx) const {
    const auto learner = str(ctx, "learner");
    const auto exam_id = str(ctx, "exam_id");
    const int month = ctx.value("month", 0);
    const bool with_conf = ctx.value("with_confidence", false);
    json answers = json::array();
    int num = 0;
    for (const auto& qid_json : ctx.at("question_ids")) {
        const auto qid = qid_json.get<std::string>();
        const auto& q = bank_->at(qid);
        ++num;
        auto answer = answer_for(learner, exam_id, q, month);
        const bool correct = assess::normalize_answer(answer, q) == assess::normalize_answer(q.answer_key, q);
        const auto h = draw(config_.seed, {"reasoning", learner, exam_id, qid});
        const auto topic = topic_of(q);
        std::string reasoning;
        if (learner == "deep") {
            static constexpr std::array<const char*, 3> open = {
                "Although this stem looks like one I have practised, I checked the context before answering.",
                "First I asked why the sentence needs a particular form, rather than matching it to an old item.",
                "I read the whole sentence again, because similar wording can hide a different time frame."};
            static constexpr std::array<const char*, 3> mid = {
                "The clue words fix the time and voice, and the rule for %T applies here; however, I also compared "
                "the other forms, since a small change in context would change the answer.",
                "The rule for %T connects to what we learned earlier, but the key detail in this sentence decides "
                "which form fits, whereas the other options break the agreement.",
                "I matched the auxiliary to the verb form, and I checked the subject as well; in contrast, a "
                "memorised pattern would ignore the changed clue."};
            reasoning = std::string(pick(open, h)) + " " + pick(mid, h >> 8) + " Therefore I chose '" + answer + "'.";
        } else if (learner == "surface") {
            static constexpr std::array<const char*, 2> lines = {
                "I remember this pattern from the weekly test, so the answer is '%A' because it matches the form we "
                "memorised for %T.",
                "This looks like the question we practised, therefore I used the same answer '%A'."};
            reasoning = pick(lines, h);
        } else if (learner == "lazy") {
            static constexpr std::array<const char*, 3> lines = {"I think I've seen this, so '%A'.", "Guessing '%A'.",
                                                                 "Looks familiar. '%A'."};
            reasoning = pick(lines, h);
        } else {
            static constexpr std::array<const char*, 2> lines = {"The sentence needs '%A' because of the %T rule.",
                                                                 "'%A' fits the structure of the sentence."};
            reasoning = pick(lines, h);
        }
        for (auto pos = reasoning.find("%A"); pos != std::string::npos; pos = reasoning.find("%A"))
            reasoning.replace(pos, 2, answer);
        for (auto pos = reasoning.find("%T"); pos != std::string::npos; pos = reasoning.find("%T"))
            reasoning.replace(pos, 2, text::to_lower(topic));
        json a = {{"question_num", num}, {"answer", answer}, {"reasoning", reasoning}};
        if (with_conf) {
            int base = correct ? 70 : 45;
            if (learner == "surface" || learner == "lazy") base += 10;
            a["confidence"] = std::to_string(std::min(100, base + static_cast<int>((h >> 20) % 25)));
        }
        answers.push_back(std::move(a));
    }
    return json{{"answers", answers}}.dump(1);
}

std::string ScriptedBackend::choice_reply(const json& ctx, const std::string& template_id) const {
    const auto learner = str(ctx, "learner");
    const auto month = std::to_string(ctx.value("month", 0));
    const auto& p = config_.policy(learner);
    const bool rest = unit(draw(config_.seed, {"choice", learner, template_id, month})) < p.rest_probability;
    if (template_id == "choice_pre_exam_review") {
        if (rest) return json{{"choice", "relaxation"}, {"reason", "I feel ready and want to stay calm."}}.dump(1);
        return json{{"choice", "review summary"}, {"reason", "Reviewing my notes helps me connect the month's rules."}}
            .dump(1);
    }
    const bool consolidation = template_id == "choice_consolidation";
    if (rest) return json{{"choice", "rest"}, {"content", "none"}}.dump(1);
    std::string body = str(ctx, "material");
    if (body.empty()) body = "(no notes)";
    std::string content = consolidation ? "Month " + month + " summary (" + learner + "): " +
                                              text::truncate_utf8(body, 600)
                                        : "[Knowledge System Restructuring] The month's rules form one system. "
                                          "[Error Pattern Summary] " +
                                              text::truncate_utf8(body, 400) +
                                              " [Strategy & Method Insights] Check the context clue first.";
    return json{{"choice", consolidation ? "summarize" : "summary"}, {"content", content}}.dump(1);
}

std::string ScriptedBackend::self_concept_reply(const json& ctx) const {
    const auto learner = str(ctx, "learner");
    const auto& p = config_.policy(learner);
    double score = p.initial_self_concept;
    if (ctx.contains("previous_score") && !ctx["previous_score"].is_null()) {
        score = ctx["previous_score"].get<double>();
        std::vector<double> own;
        if (ctx.contains("own_scores")) own = ctx["own_scores"].get<std::vector<double>>();
        if (own.size() >= 2) score += p.score_sensitivity * (own.back() - own[own.size() - 2]);
        if (!own.empty() && ctx.contains("peer_latest") && !ctx["peer_latest"].empty()) {
            double mean = 0;
            for (const auto& v : ctx["peer_latest"]) mean += v.get<double>();
            mean /= static_cast<double>(ctx["peer_latest"].size());
            score += p.peer_sensitivity * (own.back() - mean);
        }
    }
    int s = static_cast<int>(std::lround(std::clamp(score, 0.0, 100.0)));
    std::string desc = s >= 70   ? "I feel confident about my grasp of grammar and my progress."
                       : s >= 50 ? "I am doing reasonably well but see gaps compared with classmates."
                                 : "I doubt my ability and find the tests discouraging.";
    return json{{"self-concept", std::to_string(s)}, {"description", desc}}.dump(1);
}

std::string ScriptedBackend::debate_reply(const json& ctx) const {
    const auto learner = str(ctx, "learner");
    const auto& q = bank_->at(str(ctx, "question_id"));
    const auto mine = str(ctx, "my_answer");
    const auto theirs = str(ctx, "opponent_answer");
    const auto key = assess::normalize_answer(q.answer_key, q);
    const bool me_right = assess::normalize_answer(mine, q) == key;
    const bool them_right = assess::normalize_answer(theirs, q) == key;
    const auto& p = config_.policy(learner);
    double concede = me_right ? (them_right ? 0.0 : p.concede_to_wrong)
                              : (them_right ? p.concede_to_correct : p.concede_both_wrong);
    const auto round = std::to_string(ctx.value("round", 1));
    const auto h = draw(config_.seed, {"debate", learner, str(ctx, "debate_id"), round});
    if (unit(h) < concede) return "You make a fair case. I'm convinced. Now I believe the answer is " + theirs + ".";
    if (learner == "deep") {
        return "I still think the answer is " + mine +
               ". Although your answer looks familiar, the context clue in this sentence changes the required "
               "form, so the rule points to my answer; however, I am open to a better argument.";
    }
    if (learner == "surface") {
        return "I still choose " + mine + " because it is the answer we memorised for this kind of question.";
    }
    if (learner == "lazy") return "I'll stick with " + mine + ". It looks right to me.";
    return "My answer is still " + mine + " because it fits the sentence.";
}

std::string ScriptedBackend::moderator_reply(const json& ctx) const {
    const int round = ctx.value("round", 1);
    const int cap = ctx.value("round_cap", 4);
    switch (config_.moderator) {
        case ModeratorMode::always_continue:
            return "Judgment: continue\nReason: The learners should keep exchanging arguments.";
        case ModeratorMode::always_end:
            return "Judgment: end\nReason: The two learners' viewpoints are repetitive.";
        case ModeratorMode::adaptive:
            break;
    }
    if (round >= cap) return "Judgment: end\nReason: The debate has gone through more than 3 rounds.";
    const auto h = draw(config_.seed, {"moderator", str(ctx, "debate_id"), std::to_string(round)});
    if (round >= 2 && unit(h) < config_.moderator_end_probability) {
        if ((h >> 7) % 2 == 0) {
            return "Judgment: end\nReason: Both learners maintain their views with sufficient reasoning.";
        }
        return "Judgment: end\nReason: The two learners' viewpoints are similar and repetitive.";
    }
    return "Judgment: continue\nReason: The disagreement is not yet resolved.";
}

std::string ScriptedBackend::lesson_reply(const json& ctx) const {
    return "Lesson for Month " + str(ctx, "month") + ", Week " + str(ctx, "week") + ": " + str(ctx, "topic") +
           ".\nKey rule: " + str(ctx, "content") +
           "\nPractice: identify the clue words, decide the time frame and voice, then choose the verb form.";
}

std::string ScriptedBackend::notes_reply(const json& ctx) const {
    const auto learner = str(ctx, "learner");
    const auto topic = str(ctx, "topic");
    const auto content = str(ctx, "content");
    if (learner == "deep") {
        return "Notes on " + topic + ": " + content +
               " Why: the form follows from time and voice. Connection: compare with earlier weeks' rules; "
               "watch for clue words that change the answer.";
    }
    if (learner == "surface") return "Notes on " + topic + ": " + content + " Memorise the typical answer pattern.";
    if (learner == "lazy") return "Notes: " + topic + ".";
    return "Notes on " + topic + ": " + content;
}

std::string ScriptedBackend::explanation_reply(const json& ctx) const {
    std::string out = "Explanations for Month " + str(ctx, "month") + ", Week " + str(ctx, "week") + ", Batch " +
                      str(ctx, "batch") + ":";
    int n = 0;
    for (const auto& qid : ctx.at("question_ids")) {
        const auto& q = bank_->at(qid.get<std::string>());
        out += "\nQ" + std::to_string(++n) + ": the answer is '" + q.answer_key + "' by the rule of " + topic_of(q) + ".";
    }
    return out;
}

std::string ScriptedBackend::review_reply(const json& ctx) const {
    return "Review for Month " + str(ctx, "month") + ": the key rules this month, the errors I made in the weekly "
           "tests, and the clue words to check first.";
}

std::string ScriptedBackend::trap_reply(const json& ctx) const {
    const auto& src = bank_->at(str(ctx, "source_id"));
    json draft = {{"stem", "(changed context) " + src.stem}};
    if (src.format == corpus::Format::multiple_choice) {
        json opts = json::array();
        for (const auto& o : src.options) opts.push_back({{"label", o.label}, {"text", o.text}});
        draft["options"] = opts;
        draft["answer_key"] = distractor(src, draw(config_.seed, {"trap", src.id}));
    } else {
        draft["answer_key"] = flip_verb_form(src.answer_key).value_or(src.answer_key + " (revised)");
    }
    return json{{"questions", json::array({draft})}}.dump(1);
}

}  // namespace lsim::agents
