#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsim/sim_time.hpp"

namespace lsim::engine {

struct Event {
    std::uint64_t seq = 0;  // 1-based, no gaps
    SimTime timestamp;
    std::string kind;
    nlohmann::json payload;
};

nlohmann::json to_json(const Event& e);
/// Throws lsim::Error when seq, timestamp, kind or payload is missing.
Event event_from_json(const nlohmann::json& j);
/// One JSONL line, without the newline.
std::string serialize(const Event& e);

/// Single-writer append-only JSONL log. Keeps a running FNV-1a digest of every
/// byte written so checkpoints can pin the exact prefix they describe.
class EventLog {
  public:
    /// Start a fresh log (truncating any file).
    static EventLog create(const std::filesystem::path& path);
    /// Continue a log whose first `lines` lines (already verified) are kept.
    static EventLog reopen(const std::filesystem::path& path, const std::vector<std::string>& lines);

    /// Returns the new event's seq.
    std::uint64_t append(std::string kind, nlohmann::json payload, const SimTime& at);
    void flush();

    std::uint64_t last_seq() const { return seq_; }
    std::uint64_t digest() const { return digest_; }

  private:
    std::ofstream out_;
    std::uint64_t seq_ = 0;
    std::uint64_t digest_ = 0;
};

/// FNV-1a digest of the first `count` lines, each followed by '\n'.
std::uint64_t digest_lines(const std::vector<std::string>& lines, std::size_t count);

/// Parse a whole log. Throws ParseError naming the line for malformed records and
/// lsim::Error for sequence gaps.
std::vector<Event> read_events(const std::filesystem::path& path);

}  // namespace lsim::engine
