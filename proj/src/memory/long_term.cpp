#include "lsim/memory/long_term.hpp"

#include <algorithm>
#include <cstdio>

#include "lsim/error.hpp"
#include "lsim/util/text.hpp"

namespace lsim::memory {

using nlohmann::json;

namespace {
constexpr EntryKind kAllKinds[] = {EntryKind::knowledge_summary, EntryKind::reflection,   EntryKind::exam_answer,
                                   EntryKind::teacher_feedback,  EntryKind::debate_record, EntryKind::score_record,
                                   EntryKind::self_concept_record, EntryKind::year_consolidation};
}

std::string_view to_string(EntryKind k) {
    switch (k) {
        case EntryKind::knowledge_summary: return "knowledge_summary";
        case EntryKind::reflection: return "reflection";
        case EntryKind::exam_answer: return "exam_answer";
        case EntryKind::teacher_feedback: return "teacher_feedback";
        case EntryKind::debate_record: return "debate_record";
        case EntryKind::score_record: return "score_record";
        case EntryKind::self_concept_record: return "self_concept_record";
        case EntryKind::year_consolidation: return "year_consolidation";
    }
    return "?";
}

std::optional<EntryKind> parse_entry_kind(std::string_view s) {
    for (auto k : kAllKinds) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

json to_json(const MemoryEntry& e) {
    json j = {{"entry_id", e.entry_id}, {"owner", e.owner}, {"kind", to_string(e.kind)}, {"month", e.month}};
    if (e.week) j["week"] = *e.week;
    j["payload"] = e.payload;
    j["created_at"] = lsim::to_json(e.created_at);
    return j;
}

MemoryEntry entry_from_json(const json& j) {
    MemoryEntry e;
    e.entry_id = j.at("entry_id").get<std::string>();
    e.owner = j.at("owner").get<std::string>();
    auto kind = parse_entry_kind(j.at("kind").get<std::string>());
    if (!kind) throw SchemaError("unknown memory entry kind '" + j.at("kind").get<std::string>() + "'");
    e.kind = *kind;
    e.month = j.at("month").get<int>();
    if (j.contains("week") && !j["week"].is_null()) e.week = j["week"].get<int>();
    e.payload = j.at("payload");
    e.created_at = sim_time_from_json(j.at("created_at"));
    return e;
}

namespace {

void need(const json& p, const char* field, bool (json::*pred)() const noexcept, const char* type, EntryKind k) {
    if (!p.contains(field) || !(p[field].*pred)()) {
        throw SchemaError(std::string(to_string(k)) + " payload needs " + type + " field '" + field + "'");
    }
}

}  // namespace

void validate_payload(EntryKind kind, const json& p) {
    if (!p.is_object()) throw SchemaError(std::string(to_string(kind)) + " payload must be an object");
    switch (kind) {
        case EntryKind::knowledge_summary:
        case EntryKind::reflection:
        case EntryKind::year_consolidation:
            need(p, "text", &json::is_string, "string", kind);
            break;
        case EntryKind::teacher_feedback:
            need(p, "text", &json::is_string, "string", kind);
            need(p, "batch", &json::is_number_integer, "integer", kind);
            break;
        case EntryKind::exam_answer:
            need(p, "exam_id", &json::is_string, "string", kind);
            need(p, "question_id", &json::is_string, "string", kind);
            need(p, "stem", &json::is_string, "string", kind);
            need(p, "answer", &json::is_string, "string", kind);
            break;
        case EntryKind::debate_record:
            need(p, "debate_id", &json::is_string, "string", kind);
            need(p, "question_id", &json::is_string, "string", kind);
            need(p, "stem", &json::is_string, "string", kind);
            need(p, "thread", &json::is_string, "string", kind);
            break;
        case EntryKind::score_record:
            need(p, "exam_id", &json::is_string, "string", kind);
            need(p, "score", &json::is_number, "numeric", kind);
            break;
        case EntryKind::self_concept_record: {
            need(p, "score", &json::is_number, "numeric", kind);
            double s = p["score"].get<double>();
            if (s < 0 || s > 100) throw SchemaError("self_concept_record score must be within 0-100");
            break;
        }
    }
}

std::string entry_stem(const MemoryEntry& e) {
    if ((e.kind == EntryKind::exam_answer || e.kind == EntryKind::debate_record) && e.payload.contains("stem")) {
        return e.payload["stem"].get<std::string>();
    }
    return {};
}

std::string LongTermStore::store(MemoryEntry entry) {
    validate_payload(entry.kind, entry.payload);
    if (entry.owner.empty()) entry.owner = owner_;
    if (entry.entry_id.empty()) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "-%06zu", entries_.size() + 1);
        entry.entry_id = owner_ + buf;
    }
    if (ids_.count(entry.entry_id)) throw SchemaError("duplicate memory entry id '" + entry.entry_id + "'");
    ids_.emplace(entry.entry_id, entries_.size());
    stem_words_.push_back(text::word_set(entry_stem(entry)));
    std::vector<std::uint32_t> ids;
    for (const auto& w : stem_words_.back()) {
        ids.push_back(vocab_.try_emplace(w, static_cast<std::uint32_t>(vocab_.size())).first->second);
    }
    std::sort(ids.begin(), ids.end());
    stem_ids_.push_back(std::move(ids));
    entries_.push_back(std::move(entry));
    return entries_.back().entry_id;
}

std::vector<std::uint32_t> LongTermStore::intern_query(const std::set<std::string>& words,
                                                       std::size_t& unknown) const {
    std::vector<std::uint32_t> ids;
    unknown = 0;
    for (const auto& w : words) {
        auto it = vocab_.find(w);
        if (it == vocab_.end()) {
            ++unknown;
        } else {
            ids.push_back(it->second);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

double LongTermStore::stem_similarity(std::size_t i, const std::vector<std::uint32_t>& known,
                                      std::size_t unknown) const {
    const auto& s = stem_ids_[i];
    const std::size_t q = known.size() + unknown;
    if (q == 0 && s.empty()) return 0.0;
    std::size_t inter = 0;
    for (std::size_t a = 0, b = 0; a < known.size() && b < s.size();) {
        const auto x = known[a], y = s[b];
        if (x == y) ++inter;
        if (x <= y) ++a;
        if (x >= y) ++b;
    }
    return static_cast<double>(inter) / static_cast<double>(q + s.size() - inter);
}

const MemoryEntry* LongTermStore::find(std::string_view id) const {
    auto it = ids_.find(id);
    return it == ids_.end() ? nullptr : &entries_[it->second];
}

std::string LongTermStore::dump_jsonl() const {
    std::string out;
    for (const auto& e : entries_) {
        out += to_json(e).dump();
        out += '\n';
    }
    return out;
}

LongTermStore LongTermStore::load_jsonl(std::string owner, std::string_view jsonl) {
    LongTermStore s(std::move(owner));
    std::size_t start = 0;
    long line = 0;
    while (start < jsonl.size()) {
        auto nl = jsonl.find('\n', start);
        auto row = jsonl.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? jsonl.size() : nl + 1;
        ++line;
        if (text::trim(row).empty()) continue;
        try {
            s.store(entry_from_json(json::parse(row)));
        } catch (const json::exception& e) {
            throw ParseError("memory dump", line, "", e.what());
        }
    }
    return s;
}

}  // namespace lsim::memory
