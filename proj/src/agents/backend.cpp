#include "lsim/agents/backend.hpp"

#include "lsim/agents/http_backend.hpp"
#include "lsim/agents/scripted_backend.hpp"
#include "lsim/error.hpp"

namespace lsim::agents {

std::unique_ptr<Backend> make_backend(const nlohmann::json& config, std::shared_ptr<const corpus::QuestionBank> bank,
                                      std::uint64_t seed) {
    const auto type = config.value("type", std::string("scripted"));
    if (type == "scripted") {
        return std::make_unique<ScriptedBackend>(
            std::move(bank), ScriptedConfig::from_json(config.value("scripted", nlohmann::json::object()), seed));
    }
    if (type == "http") {
        return std::make_unique<HttpBackend>(HttpSettings::from_json(config.value("http", nlohmann::json::object())));
    }
    throw Error("unknown backend type '" + type + "' (expected scripted or http)");
}

}  // namespace lsim::agents
