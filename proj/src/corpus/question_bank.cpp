#include "lsim/corpus/question_bank.hpp"

#include <algorithm>

#include "lsim/error.hpp"
#include "lsim/util/files.hpp"

namespace lsim::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Format f) {
    switch (f) {
        case Format::multiple_choice: return "multiple_choice";
        case Format::fill_in_blank: return "fill_in_blank";
        case Format::error_correction: return "error_correction";
    }
    return "?";
}

std::string_view to_string(Category c) {
    switch (c) {
        case Category::review: return "review";
        case Category::trap: return "trap";
        case Category::knowledge_integration: return "knowledge_integration";
        case Category::anchor: return "anchor";
        case Category::weekly: return "weekly";
    }
    return "?";
}

std::optional<Format> parse_format(std::string_view s) {
    for (auto f : {Format::multiple_choice, Format::fill_in_blank, Format::error_correction}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

std::optional<Category> parse_category(std::string_view s) {
    for (auto c : {Category::review, Category::trap, Category::knowledge_integration, Category::anchor,
                   Category::weekly}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

json to_json(const Question& q) {
    json j = {{"id", q.id}, {"format", to_string(q.format)}, {"stem", q.stem}};
    if (!q.options.empty()) {
        json opts = json::array();
        for (const auto& o : q.options) opts.push_back({{"label", o.label}, {"text", o.text}});
        j["options"] = std::move(opts);
    }
    j["answer_key"] = q.answer_key;
    j["category"] = to_string(q.category);
    j["month"] = q.month;
    if (q.week) j["week"] = *q.week;
    if (q.trap_source_id) j["trap_source_id"] = *q.trap_source_id;
    return j;
}

json to_json(const KnowledgePoint& kp) {
    return {{"month", kp.month}, {"week", kp.week}, {"topic", kp.topic}, {"teaching_content", kp.teaching_content}};
}

void QuestionBank::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < questions.size(); ++i) index_.emplace(questions[i].id, i);  // first wins
}

const Question* QuestionBank::find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &questions[it->second];
}

const Question& QuestionBank::at(std::string_view id) const {
    if (const auto* q = find(id)) return *q;
    throw Error("unknown question id '" + std::string(id) + "'");
}

const KnowledgePoint* QuestionBank::knowledge_point(int month, int week) const {
    auto it = std::find_if(knowledge_points.begin(), knowledge_points.end(),
                           [&](const KnowledgePoint& kp) { return kp.month == month && kp.week == week; });
    return it == knowledge_points.end() ? nullptr : &*it;
}

namespace {

const json& require(const json& rec, const char* field, const std::string& file, long index) {
    if (!rec.is_object()) throw ParseError(file, index, "", "record is not an object");
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null()) throw ParseError(file, index, field, "missing");
    return *it;
}

std::string get_string(const json& rec, const char* field, const std::string& file, long index) {
    const auto& v = require(rec, field, file, index);
    if (!v.is_string()) throw ParseError(file, index, field, "expected a string");
    return v.get<std::string>();
}

int get_int(const json& v, const char* field, const std::string& file, long index) {
    if (!v.is_number_integer()) throw ParseError(file, index, field, "expected an integer");
    return v.get<int>();
}

}  // namespace

Question parse_question(const json& rec, const std::string& file, long index) {
    Question q;
    q.id = get_string(rec, "id", file, index);
    auto fmt = get_string(rec, "format", file, index);
    auto f = parse_format(fmt);
    if (!f) throw ParseError(file, index, "format", "unknown format '" + fmt + "'");
    q.format = *f;
    q.stem = get_string(rec, "stem", file, index);
    q.answer_key = get_string(rec, "answer_key", file, index);
    auto cat = get_string(rec, "category", file, index);
    auto c = parse_category(cat);
    if (!c) throw ParseError(file, index, "category", "unknown category '" + cat + "'");
    q.category = *c;
    q.month = get_int(require(rec, "month", file, index), "month", file, index);
    if (auto it = rec.find("week"); it != rec.end() && !it->is_null()) q.week = get_int(*it, "week", file, index);
    if (auto it = rec.find("trap_source_id"); it != rec.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError(file, index, "trap_source_id", "expected a string");
        q.trap_source_id = it->get<std::string>();
    }
    if (auto it = rec.find("options"); it != rec.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError(file, index, "options", "expected an array");
        for (const auto& o : *it) {
            if (!o.is_object() || !o.contains("label") || !o.contains("text") || !o["label"].is_string() ||
                !o["text"].is_string()) {
                throw ParseError(file, index, "options", "each option needs string 'label' and 'text'");
            }
            q.options.push_back({o["label"].get<std::string>(), o["text"].get<std::string>()});
        }
    }
    return q;
}

void parse_month_document(const json& doc, const std::string& file, QuestionBank& bank) {
    if (!doc.is_object()) throw ParseError(file, -1, "", "document is not an object");
    const int file_month = get_int(require(doc, "month", file, -1), "month", file, -1);
    if (auto it = doc.find("knowledge_points"); it != doc.end()) {
        if (!it->is_array()) throw ParseError(file, -1, "knowledge_points", "expected an array");
        long i = 0;
        for (const auto& rec : *it) {
            KnowledgePoint kp;
            kp.month = get_int(require(rec, "month", file, i), "month", file, i);
            kp.week = get_int(require(rec, "week", file, i), "week", file, i);
            kp.topic = get_string(rec, "topic", file, i);
            kp.teaching_content = get_string(rec, "teaching_content", file, i);
            bank.knowledge_points.push_back(std::move(kp));
            bank.knowledge_point_file_month.push_back(file_month);
            ++i;
        }
    }
    if (auto it = doc.find("questions"); it != doc.end()) {
        if (!it->is_array()) throw ParseError(file, -1, "questions", "expected an array");
        long i = 0;
        for (const auto& rec : *it) {
            bank.questions.push_back(parse_question(rec, file, i++));
            bank.question_file_month.push_back(file_month);
        }
    }
}

void parse_anchor_document(const json& doc, const std::string& file, QuestionBank& bank) {
    if (!doc.is_object() || !doc.contains("items") || !doc["items"].is_array()) {
        throw ParseError(file, -1, "items", "expected an object with an 'items' array");
    }
    long i = 0;
    for (const auto& rec : doc["items"]) {
        auto q = parse_question(rec, file, i++);
        bank.anchor_ids.push_back(q.id);
        bank.questions.push_back(std::move(q));
        bank.question_file_month.push_back(0);
    }
}

namespace {
json parse_json_file(const fs::path& p) {
    try {
        return json::parse(files::read_file(p));
    } catch (const json::parse_error& e) {
        throw ParseError(p.string(), -1, "", std::string("invalid JSON: ") + e.what());
    }
}
}  // namespace

QuestionBank load_question_bank(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir.string());
    QuestionBank bank;
    auto months_dir = dir / "months";
    std::vector<fs::path> month_files;
    if (fs::is_directory(months_dir)) {
        for (const auto& e : fs::directory_iterator(months_dir)) {
            if (e.is_regular_file() && e.path().extension() == ".json") month_files.push_back(e.path());
        }
    }
    std::sort(month_files.begin(), month_files.end());
    for (const auto& p : month_files) parse_month_document(parse_json_file(p), p.string(), bank);
    auto anchor = dir / "anchor.json";
    if (fs::exists(anchor)) parse_anchor_document(parse_json_file(anchor), anchor.string(), bank);
    bank.reindex();
    return bank;
}

}  // namespace lsim::corpus
