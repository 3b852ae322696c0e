#include "lsim/engine/events.hpp"

#include "lsim/error.hpp"
#include "lsim/util/files.hpp"
#include "lsim/util/rng.hpp"

namespace lsim::engine {

using nlohmann::json;

namespace {
constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;
}

json to_json(const Event& e) {
    return {{"seq", e.seq}, {"timestamp", lsim::to_json(e.timestamp)}, {"kind", e.kind}, {"payload", e.payload}};
}

Event event_from_json(const json& j) {
    for (const char* f : {"seq", "timestamp", "kind", "payload"}) {
        if (!j.contains(f)) throw Error(std::string("event is missing '") + f + "'");
    }
    Event e;
    e.seq = j["seq"].get<std::uint64_t>();
    e.timestamp = sim_time_from_json(j["timestamp"]);
    e.kind = j["kind"].get<std::string>();
    e.payload = j["payload"];
    return e;
}

std::string serialize(const Event& e) { return to_json(e).dump(); }

EventLog EventLog::create(const std::filesystem::path& path) {
    EventLog log;
    log.out_.open(path, std::ios::binary | std::ios::trunc);
    if (!log.out_) throw Error("cannot write " + path.string());
    log.digest_ = kFnvBasis;
    return log;
}

EventLog EventLog::reopen(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    EventLog log;
    {
        std::ofstream rewrite(path, std::ios::binary | std::ios::trunc);
        for (const auto& l : lines) rewrite << l << '\n';
        if (!rewrite) throw Error("cannot rewrite " + path.string());
    }
    log.out_.open(path, std::ios::binary | std::ios::app);
    if (!log.out_) throw Error("cannot append to " + path.string());
    log.seq_ = lines.size();
    log.digest_ = digest_lines(lines, lines.size());
    return log;
}

std::uint64_t EventLog::append(std::string kind, json payload, const SimTime& at) {
    Event e{++seq_, at, std::move(kind), std::move(payload)};
    auto line = serialize(e);
    line += '\n';
    digest_ = rng::fnv1a(line, digest_);
    out_ << line;
    return seq_;
}

void EventLog::flush() {
    out_.flush();
    if (!out_) throw Error("event log write failed");
}

std::uint64_t digest_lines(const std::vector<std::string>& lines, std::size_t count) {
    std::uint64_t d = kFnvBasis;
    for (std::size_t i = 0; i < count && i < lines.size(); ++i) {
        d = rng::fnv1a(lines[i], d);
        d = rng::fnv1a("\n", d);
    }
    return d;
}

std::vector<Event> read_events(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw Error("no event log at " + path.string());
    std::vector<Event> out;
    long n = 0;
    for (const auto& line : files::read_lines(path)) {
        ++n;
        try {
            out.push_back(event_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw ParseError(path.string(), n, "", e.what());
        }
        if (out.back().seq != static_cast<std::uint64_t>(n)) {
            throw Error(path.string() + ": line " + std::to_string(n) + " has seq " +
                        std::to_string(out.back().seq));
        }
    }
    return out;
}

}  // namespace lsim::engine
