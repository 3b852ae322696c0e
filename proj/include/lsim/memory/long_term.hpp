#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lsim/sim_time.hpp"

namespace lsim::memory {

enum class EntryKind {
    knowledge_summary,
    reflection,
    exam_answer,
    teacher_feedback,
    debate_record,
    score_record,
    self_concept_record,
    year_consolidation,
};

std::string_view to_string(EntryKind k);
std::optional<EntryKind> parse_entry_kind(std::string_view s);

struct MemoryEntry {
    std::string entry_id;  // assigned by the store when empty
    std::string owner;
    EntryKind kind = EntryKind::knowledge_summary;
    int month = 0;
    std::optional<int> week;
    nlohmann::json payload = nlohmann::json::object();
    SimTime created_at;

    bool operator==(const MemoryEntry&) const = default;
};

nlohmann::json to_json(const MemoryEntry& e);
MemoryEntry entry_from_json(const nlohmann::json& j);

/// Throws SchemaError when the payload does not match its kind.
void validate_payload(EntryKind kind, const nlohmann::json& payload);

/// Stem text an entry is about (exam answers and debate records), else empty.
std::string entry_stem(const MemoryEntry& e);

/// Append-only per-learner store. Insertion order is chronological order.
class LongTermStore {
  public:
    explicit LongTermStore(std::string owner = {}) : owner_(std::move(owner)) {}

    /// Validate and append. Assigns `<owner>-NNNNNN` when entry_id is empty.
    /// Throws SchemaError on a bad payload or a duplicate id.
    std::string store(MemoryEntry entry);

    const std::vector<MemoryEntry>& entries() const { return entries_; }
    const std::string& owner() const { return owner_; }
    const MemoryEntry* find(std::string_view id) const;

    /// Lowercase word set of entry_stem(entries()[i]), computed on insert.
    const std::set<std::string>& stem_words(std::size_t i) const { return stem_words_[i]; }
    /// Jaccard similarity of stem_words(i) and `words`, on interned word ids.
    double stem_similarity(std::size_t i, const std::vector<std::uint32_t>& known, std::size_t unknown) const;
    /// Interned ids of `words` (sorted) plus the count of words no stem contains.
    std::vector<std::uint32_t> intern_query(const std::set<std::string>& words, std::size_t& unknown) const;

    std::string dump_jsonl() const;
    static LongTermStore load_jsonl(std::string owner, std::string_view jsonl);

    bool operator==(const LongTermStore& o) const { return owner_ == o.owner_ && entries_ == o.entries_; }

  private:
    std::string owner_;
    std::vector<MemoryEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> ids_;
    std::vector<std::set<std::string>> stem_words_;
    std::map<std::string, std::uint32_t, std::less<>> vocab_;
    std::vector<std::vector<std::uint32_t>> stem_ids_;
};

}  // namespace lsim::memory
