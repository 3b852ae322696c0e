#include "lsim/engine/config.hpp"

#include <set>

#include "lsim/agents/profiles.hpp"
#include "lsim/error.hpp"
#include "lsim/util/files.hpp"

namespace lsim::engine {

using nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (corpus_path.empty()) throw Error("config: corpus_path is required");
    if (months < 1 || months > 12) throw Error("config: months must be within 1..12");
    if (k < 1) throw Error("config: k must be >= 1");
    if (k_d < 1) throw Error("config: k_d must be >= 1");
    if (learners.empty()) throw Error("config: learners must not be empty");
    std::set<std::string> seen;
    for (const auto& l : learners) {
        if (!agents::parse_learner_id(l)) throw Error("config: unknown learner '" + l + "'");
        if (!seen.insert(l).second) throw Error("config: learner '" + l + "' listed twice");
    }
    const auto type = backend.value("type", std::string());
    if (type != "scripted" && type != "http") throw Error("config: backend.type must be scripted or http");
    if (backend.contains("http") && backend["http"].contains("api_key")) {
        throw Error("config: tokens belong in the environment (backend.http.api_key_env), not the file");
    }
}

json RunConfig::to_json() const {
    json j = {{"corpus_path", corpus_path.string()},
              {"backend", backend},
              {"seed", seed},
              {"months", months},
              {"learners", learners},
              {"k", k},
              {"k_d", k_d},
              {"debate_cap", debate_cap ? json(*debate_cap) : json(nullptr)},
              {"output_dir", output_dir.string()},
              {"parallel", parallel}};
    if (!seeds.empty()) j["seeds"] = seeds;
    if (templates_dir) j["templates_dir"] = templates_dir->string();
    if (connector_lexicon) j["connector_lexicon"] = *connector_lexicon;
    return j;
}

namespace {

fs::path resolve(const fs::path& p, const fs::path& base) {
    if (p.empty() || p.is_absolute() || base.empty()) return p;
    return (base / p).lexically_normal();
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const fs::path& base) {
    static const std::set<std::string> known = {"corpus_path", "backend", "seed",       "seeds",
                                                "months",      "learners", "k",         "k_d",
                                                "debate_cap",  "output_dir", "templates_dir", "connector_lexicon",
                                                "parallel"};
    if (!j.is_object()) throw Error("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw Error("config: unknown field '" + key + "'");
    }
    RunConfig c;
    try {
        if (j.contains("corpus_path")) c.corpus_path = resolve(j["corpus_path"].get<std::string>(), base);
        if (j.contains("backend")) c.backend = j["backend"];
        if (!c.backend.contains("type")) c.backend["type"] = "scripted";
        c.seed = j.value("seed", c.seed);
        if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        c.months = j.value("months", c.months);
        if (j.contains("learners")) c.learners = j["learners"].get<std::vector<std::string>>();
        c.k = j.value("k", c.k);
        c.k_d = j.value("k_d", c.k_d);
        if (j.contains("debate_cap") && !j["debate_cap"].is_null()) c.debate_cap = j["debate_cap"].get<std::size_t>();
        if (j.contains("output_dir")) c.output_dir = resolve(j["output_dir"].get<std::string>(), base);
        if (j.contains("templates_dir")) c.templates_dir = resolve(j["templates_dir"].get<std::string>(), base);
        if (j.contains("connector_lexicon")) c.connector_lexicon = j["connector_lexicon"];
        c.parallel = j.value("parallel", c.parallel);
    } catch (const json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const fs::path& file) {
    json j;
    try {
        j = json::parse(files::read_file(file));
    } catch (const json::parse_error& e) {
        throw ParseError(file.string(), -1, "", e.what());
    }
    return from_json(j, fs::absolute(file).parent_path());
}

json RunConfig::identity() const {
    json b = backend;
    return {{"seed", seed},
            {"months", months},
            {"learners", learners},
            {"k", k},
            {"k_d", k_d},
            {"debate_cap", debate_cap ? json(*debate_cap) : json(nullptr)},
            {"backend", b},
            {"connector_lexicon", connector_lexicon ? *connector_lexicon : json(nullptr)}};
}

fs::path RunConfig::run_dir_for(std::uint64_t s) const { return output_dir / ("seed-" + std::to_string(s)); }

std::vector<std::uint64_t> RunConfig::all_seeds() const { return seeds.empty() ? std::vector{seed} : seeds; }

}  // namespace lsim::engine
