#include "lsim/analytics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lsim/error.hpp"
#include "lsim/util/text.hpp"

namespace lsim::analytics {

using nlohmann::json;

double reasoning_length(const std::vector<std::string>& reasonings) {
    if (reasonings.empty()) return 0.0;
    std::size_t tokens = 0;
    for (const auto& r : reasonings) tokens += text::split_whitespace(r).size();
    return static_cast<double>(tokens) / static_cast<double>(reasonings.size());
}

std::string_view to_string(ConnectorType t) {
    switch (t) {
        case ConnectorType::causal: return "causal";
        case ConnectorType::contrastive: return "contrastive";
        case ConnectorType::additive: return "additive";
    }
    return "?";
}

const std::vector<std::string>& ConnectorLexicon::of(ConnectorType t) const {
    switch (t) {
        case ConnectorType::causal: return causal;
        case ConnectorType::contrastive: return contrastive;
        case ConnectorType::additive: return additive;
    }
    return causal;
}

void ConnectorLexicon::validate() const {
    std::map<std::string, ConnectorType> seen;
    for (auto t : kConnectorTypes) {
        for (const auto& w : of(t)) {
            auto key = text::collapse_whitespace(text::to_lower(w));
            if (key.empty()) throw Error("connector lexicon has an empty " + std::string(to_string(t)) + " entry");
            auto [it, fresh] = seen.emplace(key, t);
            if (!fresh && it->second != t) {
                throw Error("connector '" + key + "' is listed as both " + std::string(to_string(it->second)) +
                            " and " + std::string(to_string(t)));
            }
        }
    }
}

ConnectorLexicon ConnectorLexicon::defaults() {
    return {{"because", "therefore", "thus", "hence", "so that", "since", "as a result"},
            {"but", "although", "however", "whereas", "while", "in contrast", "yet"},
            {"and", "also", "moreover", "furthermore", "in addition", "besides"}};
}

ConnectorLexicon ConnectorLexicon::from_json(const json& j) {
    auto lex = defaults();
    if (j.contains("causal")) lex.causal = j["causal"].get<std::vector<std::string>>();
    if (j.contains("contrastive")) lex.contrastive = j["contrastive"].get<std::vector<std::string>>();
    if (j.contains("additive")) lex.additive = j["additive"].get<std::vector<std::string>>();
    lex.validate();
    return lex;
}

json ConnectorLexicon::to_json() const {
    return {{"causal", causal}, {"contrastive", contrastive}, {"additive", additive}};
}

ConnectorCounts& ConnectorCounts::operator+=(const ConnectorCounts& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    return *this;
}

ConnectorCounts count_connectors(std::string_view s, const ConnectorLexicon& lex) {
    struct Phrase {
        std::vector<std::string> words;
        std::size_t type;
    };
    std::vector<Phrase> phrases;
    for (std::size_t t = 0; t < kConnectorTypes.size(); ++t) {
        for (const auto& p : lex.of(kConnectorTypes[t])) phrases.push_back({text::words(p), t});
    }
    std::stable_sort(phrases.begin(), phrases.end(),
                     [](const Phrase& a, const Phrase& b) { return a.words.size() > b.words.size(); });

    const auto toks = text::words(s);
    ConnectorCounts c;
    for (std::size_t i = 0; i < toks.size();) {
        std::size_t step = 1;
        for (const auto& p : phrases) {
            if (p.words.empty() || i + p.words.size() > toks.size()) continue;
            if (std::equal(p.words.begin(), p.words.end(), toks.begin() + static_cast<long>(i))) {
                ++c.counts[p.type];
                step = p.words.size();
                break;
            }
        }
        i += step;
    }
    return c;
}

ConnectorStats connector_stats(const std::vector<std::string>& reasonings, const ConnectorLexicon& lex) {
    ConnectorStats st;
    st.reasonings = reasonings.size();
    for (const auto& r : reasonings) st.counts += count_connectors(r, lex);
    if (!reasonings.empty()) {
        st.avg_per_reasoning = static_cast<double>(st.counts.total()) / static_cast<double>(reasonings.size());
    }
    if (const auto total = st.counts.total(); total > 0) {
        for (std::size_t i = 0; i < 3; ++i) {
            st.distribution[i] = static_cast<double>(st.counts.counts[i]) / static_cast<double>(total);
        }
    }
    return st;
}

Trend fit_trend(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw Error("a trend needs at least two points");
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    const double n = static_cast<double>(points.size());
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw Error("a trend needs at least two distinct months");
    Trend t;
    t.slope = sxy / sxx;
    t.intercept = my - t.slope * mx;
    return t;
}

std::map<std::string, StudyRest> study_rest_ratio(const std::vector<json>& events) {
    std::map<std::string, StudyRest> out;
    for (const auto& e : events) {
        if (e.value("kind", std::string()) != "choice") continue;
        const auto& p = e.at("payload");
        auto& sr = out[p.at("learner").get<std::string>()];
        auto& k = sr.by_kind[p.at("kind").get<std::string>()];
        const bool work = p.at("decision").get<std::string>() == "work";
        (work ? k.work : k.rest) += 1;
        (work ? sr.overall.work : sr.overall.rest) += 1;
    }
    return out;
}

}  // namespace lsim::analytics
