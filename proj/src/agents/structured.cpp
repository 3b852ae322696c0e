#include "lsim/agents/structured.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lsim/error.hpp"
#include "lsim/util/text.hpp"

namespace lsim::agents {

using nlohmann::json;

std::string_view to_string(ChoiceKind k) {
    switch (k) {
        case ChoiceKind::consolidation: return "consolidation";
        case ChoiceKind::reflection: return "reflection";
        case ChoiceKind::pre_exam_review: return "pre_exam_review";
    }
    return "?";
}

std::string_view to_string(Decision d) { return d == Decision::work ? "work" : "rest"; }

std::optional<ChoiceKind> parse_choice_kind(std::string_view s) {
    for (auto k : {ChoiceKind::consolidation, ChoiceKind::reflection, ChoiceKind::pre_exam_review}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

namespace {

/// End index (exclusive) of the balanced value starting at `start`, or npos.
std::size_t balanced_end(std::string_view s, std::size_t start) {
    std::vector<char> stack;
    bool in_string = false, escaped = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            if (escaped) escaped = false;
            else if (c == '\\') escaped = true;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') stack.push_back('}');
        else if (c == '[') stack.push_back(']');
        else if (c == '}' || c == ']') {
            if (stack.empty() || stack.back() != c) return std::string_view::npos;
            stack.pop_back();
            if (stack.empty()) return i + 1;
        }
    }
    return std::string_view::npos;
}

std::optional<int> as_int(const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number()) return static_cast<int>(v.get<double>() + (v.get<double>() >= 0 ? 0.5 : -0.5));
    if (v.is_string()) {
        auto s = text::trim(v.get<std::string>());
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == b) return std::nullopt;
        // tolerate "85%", "85/100", "85.0"
        int val = std::stoi(s.substr(b, i - b));
        return neg ? -val : val;
    }
    return std::nullopt;
}

std::string as_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return {};
    return v.dump();
}

json require_json(std::string_view raw) {
    auto j = extract_json(raw);
    if (!j) throw SchemaError("no JSON object found in the reply");
    return *j;
}

}  // namespace

std::optional<json> extract_json(std::string_view raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '{' && raw[i] != '[') continue;
        auto end = balanced_end(raw, i);
        if (end == std::string_view::npos) continue;
        auto parsed = json::parse(raw.substr(i, end - i), nullptr, false);
        if (!parsed.is_discarded()) return parsed;
    }
    return std::nullopt;
}

StructuredAnswerSet parse_answer_set(std::string_view raw, std::size_t batch_size, bool with_confidence) {
    json j = require_json(raw);
    const json* arr = nullptr;
    if (j.is_array()) arr = &j;
    else if (j.is_object() && j.contains("answers") && j["answers"].is_array()) arr = &j["answers"];
    if (!arr) throw SchemaError("expected an 'answers' array");

    StructuredAnswerSet set;
    set.raw_text = std::string(raw);
    std::set<int> seen;
    for (const auto& a : *arr) {
        if (!a.is_object()) throw SchemaError("each answer must be an object");
        if (!a.contains("question_num")) throw SchemaError("answer without question_num");
        auto num = as_int(a["question_num"]);
        if (!num) throw SchemaError("question_num is not a number");
        if (*num < 1 || static_cast<std::size_t>(*num) > batch_size) {
            throw SchemaError("question_num " + std::to_string(*num) + " is outside 1.." + std::to_string(batch_size));
        }
        if (!seen.insert(*num).second) throw SchemaError("duplicate question_num " + std::to_string(*num));
        if (!a.contains("answer")) throw SchemaError("question " + std::to_string(*num) + " has no answer");
        AnswerItem item;
        item.question_num = *num;
        item.answer = as_text(a["answer"]);
        item.reasoning = a.contains("reasoning") ? as_text(a["reasoning"]) : std::string();
        if (with_confidence) {
            if (!a.contains("confidence")) throw SchemaError("question " + std::to_string(*num) + " has no confidence");
            auto c = as_int(a["confidence"]);
            if (!c || *c < 0 || *c > 100) {
                throw SchemaError("question " + std::to_string(*num) + " confidence must be 0-100");
            }
            item.confidence = c;
        }
        set.answers.push_back(std::move(item));
    }
    if (seen.size() != batch_size) {
        throw SchemaError("expected answers for questions 1.." + std::to_string(batch_size) + ", got " +
                          std::to_string(seen.size()));
    }
    std::sort(set.answers.begin(), set.answers.end(),
              [](const AnswerItem& a, const AnswerItem& b) { return a.question_num < b.question_num; });
    return set;
}

std::string render_answer_set(const std::vector<AnswerItem>& answers) {
    json arr = json::array();
    for (const auto& a : answers) {
        json j = {{"question_num", a.question_num}, {"answer", a.answer}, {"reasoning", a.reasoning}};
        if (a.confidence) j["confidence"] = *a.confidence;
        arr.push_back(std::move(j));
    }
    return json{{"answers", std::move(arr)}}.dump(1);
}

StrategicChoice parse_choice(std::string_view raw, ChoiceKind kind) {
    json j = require_json(raw);
    if (!j.is_object() || !j.contains("choice")) throw SchemaError("expected a 'choice' field");
    auto choice = text::to_lower(text::trim(as_text(j["choice"])));
    StrategicChoice c;
    c.kind = kind;
    const bool says_rest = choice.find("rest") != std::string::npos || choice.find("relax") != std::string::npos ||
                           choice.find("break") != std::string::npos;
    const bool says_work = kind == ChoiceKind::pre_exam_review ? choice.find("review") != std::string::npos
                                                               : choice.find("summar") != std::string::npos;
    if (says_work == says_rest) throw SchemaError("unrecognised choice '" + choice + "'");
    c.decision = says_work ? Decision::work : Decision::rest;
    if (c.decision == Decision::rest) return c;

    const char* field = kind == ChoiceKind::pre_exam_review ? "reason" : "content";
    std::string body = j.contains(field) ? text::trim(as_text(j[field])) : std::string();
    if (kind != ChoiceKind::pre_exam_review) {
        if (body.empty() || text::to_lower(body) == "none") {
            throw SchemaError("a '" + choice + "' choice must include the " + std::string(field));
        }
    }
    if (!body.empty()) c.content = body;
    return c;
}

SelfConceptUpdate parse_self_concept(std::string_view raw) {
    json j = require_json(raw);
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    std::optional<int> score;
    for (const char* key : {"self-concept", "self_concept", "score"}) {
        if (j.contains(key)) {
            score = as_int(j[key]);
            break;
        }
    }
    if (!score) throw SchemaError("missing numeric 'self-concept' score");
    return {*score, j.contains("description") ? as_text(j["description"]) : std::string()};
}

ModeratorRuling parse_moderator(std::string_view raw) {
    const std::string lower = text::to_lower(raw);
    auto at = lower.find("judgment");
    if (at == std::string::npos) at = lower.find("judgement");
    if (at == std::string::npos) throw SchemaError("no 'Judgment:' line in the moderator reply");
    auto colon = lower.find(':', at);
    if (colon == std::string::npos) throw SchemaError("malformed 'Judgment:' line");
    auto eol = lower.find('\n', colon);
    auto verdict = lower.substr(colon + 1, eol == std::string::npos ? std::string::npos : eol - colon - 1);
    const bool cont = verdict.find("continue") != std::string::npos;
    const bool end = verdict.find("end") != std::string::npos;
    if (cont == end) throw SchemaError("judgment must be either continue or end");

    ModeratorRuling r;
    r.end = end;
    auto rpos = lower.find("reason", eol == std::string::npos ? colon : eol);
    if (rpos != std::string::npos) {
        auto rc = raw.find(':', rpos);
        if (rc != std::string_view::npos) r.reason = text::trim(raw.substr(rc + 1));
    }
    return r;
}

}  // namespace lsim::agents
