#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsim/memory/long_term.hpp"

namespace lsim::memory {

enum class Stage { weekly_learning, monthly_exam, debate, self_concept_eval, final_exam };

std::string_view to_string(Stage s);

/// Entry kinds a stage may hand to an agent.
const std::vector<EntryKind>& permitted_kinds(Stage s);

inline constexpr std::size_t kSimilarTopN = 3;
inline constexpr std::size_t kRenderCharLimit = 2000;

struct RetrievalContext {
    std::string learner;
    int month = 0;
    std::optional<int> week;
    /// Debated question stem; required for Stage::debate.
    std::optional<std::string> question;
    /// Peers' score records, copied in by the engine for self-concept evaluation.
    std::vector<MemoryEntry> peer_scores;
};

struct MemoryBundle {
    Stage stage = Stage::weekly_learning;
    std::vector<MemoryEntry> entries;
    std::string rendered;
};

/// Context-dependent retrieval. Pure in (store, stage, context).
/// Throws lsim::Error when a field the stage needs is missing.
MemoryBundle retrieve(const LongTermStore& store, Stage stage, const RetrievalContext& ctx);

/// Indices of the n entries of `kind` whose stem word set has the highest Jaccard
/// similarity to `question`; ties go to the more recent entry.
std::vector<std::size_t> rank_similar(const LongTermStore& store, EntryKind kind, const std::string& question,
                                      std::size_t n);

/// Deterministic text rendering; each entry is labelled with its month/week and
/// its body is cut to kRenderCharLimit bytes.
std::string render_entries(const std::vector<MemoryEntry>& entries);

/// Merge every knowledge_summary in chronological order into one year_consolidation
/// entry, store it, and return it.
MemoryEntry consolidate_year(LongTermStore& store, const std::string& learner, const SimTime& at);

}  // namespace lsim::memory
