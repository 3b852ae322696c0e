#include "lsim/corpus/trap_gen.hpp"

#include <set>

#include "lsim/agents/profiles.hpp"
#include "lsim/agents/structured.hpp"
#include "lsim/assess/grading.hpp"
#include "lsim/error.hpp"
#include "lsim/util/text.hpp"

namespace lsim::corpus {

using nlohmann::json;

json to_json(const TrapDraft& d) {
    return {{"source_id", d.source_id}, {"question", to_json(d.question)}, {"accepted", d.accepted},
            {"rejection", d.rejection}, {"verified", d.verified}};
}

std::optional<std::string> check_trap_draft(const Question& draft, const Question& source) {
    if (text::trim(draft.stem).empty()) return "empty stem";
    if (text::trim(draft.answer_key).empty()) return "empty answer key";
    if (draft.format == Format::multiple_choice) {
        if (draft.options.size() < 2) return "multiple-choice draft needs at least two options";
        std::set<std::string> labels;
        for (const auto& o : draft.options) labels.insert(text::to_lower(o.label));
        if (!labels.count(assess::normalize_answer(draft.answer_key, draft))) return "answer key is not an option";
    }
    if (assess::normalize_answer(draft.answer_key, draft) == assess::normalize_answer(source.answer_key, draft)) {
        return "trap must flip answer";
    }
    return std::nullopt;
}

namespace {

Option parse_option(const json& o, std::size_t index) {
    if (o.is_object()) return {o.at("label").get<std::string>(), o.at("text").get<std::string>()};
    auto s = text::trim(o.get<std::string>());
    // "A. text", "A) text", "(A) text"
    std::size_t i = s.size() > 0 && s[0] == '(' ? 1 : 0;
    if (s.size() > i + 1 && std::isalpha(static_cast<unsigned char>(s[i])) &&
        (s[i + 1] == '.' || s[i + 1] == ')')) {
        return {std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])))),
                text::trim(s.substr(i + 2))};
    }
    return {std::string(1, static_cast<char>('A' + index)), s};
}

Question parse_draft(const json& d, const Question& source, std::size_t n) {
    if (!d.is_object() || !d.contains("stem") || !d.contains("answer_key")) {
        throw SchemaError("each draft needs 'stem' and 'answer_key'");
    }
    Question q;
    q.id = "draft-" + source.id + "-" + std::to_string(n);
    q.format = source.format;
    q.stem = d["stem"].get<std::string>();
    q.answer_key = d["answer_key"].is_string() ? d["answer_key"].get<std::string>() : d["answer_key"].dump();
    q.category = Category::trap;
    q.month = source.month;
    q.trap_source_id = source.id;
    if (d.contains("options") && d["options"].is_array()) {
        std::size_t i = 0;
        for (const auto& o : d["options"]) q.options.push_back(parse_option(o, i++));
    }
    if (q.format == Format::multiple_choice && q.options.empty()) q.options = source.options;
    if (q.format != Format::multiple_choice) q.options.clear();
    return q;
}

}  // namespace

std::vector<TrapDraft> generate_trap_candidates(const QuestionBank& bank, const std::vector<std::string>& source_ids,
                                                agents::Backend& backend, const agents::TemplateLibrary& templates) {
    std::vector<TrapDraft> out;
    for (const auto& id : source_ids) {
        const auto* src = bank.find(id);
        if (!src) throw Error("unknown source question '" + id + "'");
        if (src->category != Category::weekly) throw Error("trap source '" + id + "' is not a weekly question");
        std::string original = src->stem;
        for (const auto& o : src->options) original += "\n" + o.label + ". " + o.text;
        agents::ChatRequest req;
        req.agent_role = "teacher";
        req.template_id = "trap_generation";
        req.context = {{"source_id", id}};
        req.messages = {{"system", agents::teacher_profile_prompt()},
                        {"user", templates.render("trap_generation", {{0, original}, {1, src->answer_key}})}};
        auto reply = backend.complete(req);
        auto j = agents::extract_json(reply.text);
        if (!j) throw SchemaError("trap draft for '" + id + "' is not JSON");
        const json list = j->is_object() && j->contains("questions") ? (*j)["questions"]
                          : j->is_array()                            ? *j
                                                                     : json::array({*j});
        std::size_t n = 0;
        for (const auto& d : list) {
            TrapDraft t;
            t.source_id = id;
            t.question = parse_draft(d, *src, ++n);
            t.raw = reply.text;
            auto why = check_trap_draft(t.question, *src);
            t.accepted = !why;
            t.rejection = why.value_or("");
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace lsim::corpus
