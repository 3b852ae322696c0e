#include "lsim/analytics/report.hpp"

#include <algorithm>
#include <set>

#include "lsim/debate/debate.hpp"
#include "lsim/engine/events.hpp"
#include "lsim/error.hpp"
#include "lsim/util/files.hpp"
#include "lsim/util/text.hpp"

namespace lsim::analytics {

using nlohmann::json;
namespace fs = std::filesystem;

std::string number(double v) { return json(v).dump(); }

namespace {

struct Graded {
    std::string learner;
    std::string exam_id;
    std::string exam_kind;
    int month = 0;
    int week = 0;
    json attempt;
    json trap_flags;
};

struct Digest {
    std::vector<std::string> learners;
    ConnectorLexicon lexicon = ConnectorLexicon::defaults();
    std::vector<Graded> graded;
    std::map<std::string, std::map<int, double>> self_concept;
    std::vector<debate::DebateTranscript> debates;
    int last_checkpoint = -1;
    bool completed = false;
};

Digest digest(const std::vector<json>& events) {
    Digest d;
    for (const auto& e : events) {
        const auto kind = e.at("kind").get<std::string>();
        const auto& p = e.at("payload");
        if (kind == "run_started") {
            for (const auto& l : p.at("learners")) d.learners.push_back(l.at("learner_id").get<std::string>());
            const auto& id = p.at("identity");
            if (id.contains("connector_lexicon") && !id["connector_lexicon"].is_null()) {
                d.lexicon = ConnectorLexicon::from_json(id["connector_lexicon"]);
            }
        } else if (kind == "exam_graded") {
            d.graded.push_back({p.at("learner").get<std::string>(), p.at("exam_id").get<std::string>(),
                                p.at("exam_kind").get<std::string>(), p.at("month").get<int>(), p.value("week", 0),
                                p.at("attempt"), p.value("trap_flags", json::array())});
        } else if (kind == "self_concept") {
            d.self_concept[p.at("learner").get<std::string>()][p.at("month").get<int>()] =
                p.at("score").get<double>();
        } else if (kind == "debate_result") {
            d.debates.push_back(debate::transcript_from_json(p.at("transcript")));
        } else if (kind == "checkpoint") {
            d.last_checkpoint = p.at("month").get<int>();
        } else if (kind == "run_completed") {
            d.completed = true;
        }
    }
    if (d.learners.empty()) throw Error("event log has no run_started record");
    return d;
}

std::vector<std::string> reasonings_of(const json& attempt) {
    std::vector<std::string> out;
    for (const auto& it : attempt.at("items")) out.push_back(it.at("reasoning").get<std::string>());
    return out;
}

double category(const json& attempt, const char* name) {
    const auto& by = attempt.at("totals").at("by_category");
    return by.contains(name) ? by[name].get<double>() : 0.0;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string rate_text(const debate::Ratio& r) {
    auto v = r.rate();
    return v ? number(*v) : "undefined";
}

std::string pct(std::optional<double> v) { return v ? text::fixed(*v, 1) : "n/a"; }

}  // namespace

std::vector<Series> longitudinal_series(const std::vector<json>& events) {
    const auto d = digest(events);
    std::vector<Series> out;
    for (const auto& l : d.learners) {
        std::map<std::string, std::map<int, double>> m;
        std::map<int, std::vector<std::string>> reasons;
        for (const auto& g : d.graded) {
            if (g.learner != l) continue;
            if (g.exam_kind == "monthly") {
                m["total_score"][g.month] = g.attempt.at("totals").at("score").get<double>();
                m["review_acc"][g.month] = category(g.attempt, "review");
                m["trap_acc"][g.month] = category(g.attempt, "trap");
                m["ki_acc"][g.month] = category(g.attempt, "knowledge_integration");
            }
            if (g.exam_kind == "monthly" || g.exam_kind == "weekly") {
                auto r = reasonings_of(g.attempt);
                auto& dst = reasons[g.month];
                dst.insert(dst.end(), r.begin(), r.end());
            }
        }
        if (auto it = d.self_concept.find(l); it != d.self_concept.end()) m["self_concept"] = it->second;
        for (const auto& [month, rs] : reasons) {
            m["reasoning_len"][month] = reasoning_length(rs);
            m["connector_density"][month] = connector_stats(rs, d.lexicon).avg_per_reasoning;
        }
        for (const char* metric : kSeriesMetrics) {
            Series s{l, metric, {}};
            for (const auto& [month, v] : m[metric]) s.points.emplace_back(month, v);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::map<std::string, std::string> render_report(const std::vector<json>& events) {
    const auto d = digest(events);
    const auto series = longitudinal_series(events);
    std::map<std::string, std::string> files;

    // per-learner series and trends
    std::string trends = "learner,metric,points,slope,intercept\n";
    std::map<std::string, std::map<std::string, const Series*>> by;
    for (const auto& s : series) {
        by[s.learner][s.metric] = &s;
        std::string csv = "learner,metric,month,value\n";
        for (const auto& [month, v] : s.points) {
            csv += s.learner + "," + s.metric + "," + std::to_string(month) + "," + number(v) + "\n";
        }
        files["series/" + s.learner + "/" + s.metric + ".csv"] = csv;
        std::set<int> months;
        for (const auto& pt : s.points) months.insert(pt.first);
        trends += s.learner + "," + s.metric + "," + std::to_string(s.points.size()) + ",";
        if (months.size() >= 2) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& [month, v] : s.points) pts.emplace_back(month, v);
            auto t = fit_trend(pts);
            trends += number(t.slope) + "," + number(t.intercept) + "\n";
        } else {
            trends += "undefined,undefined\n";
        }
    }
    files["trends.csv"] = trends;

    // raw weekly scores and per-category grades
    std::string weekly = "learner,month,week,value\n";
    std::string grades = "learner,exam_id,category,value\n";
    std::map<std::string, std::map<std::string, double>> anchor;  // learner -> initial/final -> score
    std::map<std::string, std::vector<std::string>> year_reasons;
    for (const auto& g : d.graded) {
        const double score = g.attempt.at("totals").at("score").get<double>();
        if (g.exam_kind == "weekly") {
            weekly += g.learner + "," + std::to_string(g.month) + "," + std::to_string(g.week) + "," + number(score) +
                      "\n";
        }
        if (g.exam_kind == "initial" || g.exam_kind == "final") anchor[g.learner][g.exam_kind] = score;
        grades += g.learner + "," + g.exam_id + ",total," + number(score) + "\n";
        for (const auto& [cat, v] : g.attempt.at("totals").at("by_category").items()) {
            grades += g.learner + "," + g.exam_id + "," + cat + "," + number(v.get<double>()) + "\n";
        }
        if (g.exam_kind == "weekly" || g.exam_kind == "monthly") {
            auto r = reasonings_of(g.attempt);
            auto& dst = year_reasons[g.learner];
            dst.insert(dst.end(), r.begin(), r.end());
        }
    }
    files["weekly_scores.csv"] = weekly;
    files["grades.csv"] = grades;

    // connectors and reasoning over the whole run
    std::string conn = "learner,reasonings,avg_tokens,avg_connectors,causal,contrastive,additive,causal_share,"
                       "contrastive_share,additive_share\n";
    std::map<std::string, ConnectorStats> cstats;
    std::map<std::string, double> avg_tokens;
    for (const auto& l : d.learners) {
        const auto& rs = year_reasons[l];
        auto st = connector_stats(rs, d.lexicon);
        cstats[l] = st;
        avg_tokens[l] = reasoning_length(rs);
        conn += l + "," + std::to_string(rs.size()) + "," + number(avg_tokens[l]) + "," +
                number(st.avg_per_reasoning);
        for (auto c : st.counts.counts) conn += "," + std::to_string(c);
        for (auto s : st.distribution) conn += "," + number(s);
        conn += "\n";
    }
    files["connectors.csv"] = conn;

    // strategic choices
    const auto sr = study_rest_ratio(events);
    std::string strat = "learner,kind,work,rest,work_fraction,rest_fraction\n";
    for (const auto& l : d.learners) {
        auto it = sr.find(l);
        if (it == sr.end()) continue;
        for (const auto& [kind, t] : it->second.by_kind) {
            strat += l + "," + kind + "," + std::to_string(t.work) + "," + std::to_string(t.rest) + "," +
                     number(t.work_fraction()) + "," + number(t.rest_fraction()) + "\n";
        }
        const auto& t = it->second.overall;
        strat += l + ",overall," + std::to_string(t.work) + "," + std::to_string(t.rest) + "," +
                 number(t.work_fraction()) + "," + number(t.rest_fraction()) + "\n";
    }
    files["strategy.csv"] = strat;

    // debates
    const auto ds = debate::compute_debate_stats(d.debates);
    std::string dcsv = "learner,metric,num,den,rate\n";
    for (const auto& l : d.learners) {
        auto it = ds.find(l);
        const debate::LearnerDebateStats s = it == ds.end() ? debate::LearnerDebateStats{} : it->second;
        for (const auto& [name, r] : {std::pair{"persuasion", s.persuasion},
                                      std::pair{"resist_wrong", s.resist_wrong},
                                      std::pair{"accept_correct", s.accept_correct}}) {
            dcsv += l + "," + name + "," + std::to_string(r.num) + "," + std::to_string(r.den) + "," + rate_text(r) +
                    "\n";
        }
    }
    files["debate_stats.csv"] = dcsv;

    // trap diagnosis
    std::string traps = "learner,month,trap_id,source_id,correct,stale\n";
    std::map<std::string, std::pair<long, long>> stale_count;  // learner -> (stale, traps)
    for (const auto& g : d.graded) {
        if (g.exam_kind != "monthly") continue;
        std::map<std::string, bool> correct;
        for (const auto& it : g.attempt.at("items")) {
            correct[it.at("question_id").get<std::string>()] = it.at("correct").get<bool>();
        }
        for (const auto& f : g.trap_flags) {
            const auto id = f.at("trap_id").get<std::string>();
            const bool stale = f.at("gave_stale_source_answer").get<bool>();
            traps += g.learner + "," + std::to_string(g.month) + "," + csv_field(id) + "," +
                     csv_field(f.at("source_id").get<std::string>()) + "," + (correct[id] ? "true" : "false") + "," +
                     (stale ? "true" : "false") + "\n";
            auto& c = stale_count[g.learner];
            c.first += stale ? 1 : 0;
            c.second += 1;
        }
    }
    files["trap_diagnosis.csv"] = traps;

    // summary
    auto mean_of = [](const Series* s) -> std::optional<double> {
        if (!s || s->points.empty()) return std::nullopt;
        double t = 0;
        for (const auto& p : s->points) t += p.second;
        return t / static_cast<double>(s->points.size());
    };
    auto last_of = [](const Series* s) -> std::optional<double> {
        if (!s || s->points.empty()) return std::nullopt;
        return s->points.back().second;
    };
    auto first_of = [](const Series* s) -> std::optional<double> {
        if (!s || s->points.empty()) return std::nullopt;
        return s->points.front().second;
    };
    auto anchor_score = [&](const std::string& l, const char* k) -> std::optional<double> {
        auto it = anchor.find(l);
        if (it == anchor.end() || !it->second.count(k)) return std::nullopt;
        return it->second.at(k);
    };

    std::string md = "# Run summary\n\n";
    md += d.completed ? "Run completed.\n\n"
                      : "Partial run: last checkpoint at month " + std::to_string(d.last_checkpoint) + ".\n\n";
    md += "## Scores\n\n| Learner | Initial exam | Final exam | Change | Mean monthly | Monthly trend (per month) |\n"
          "|---|---|---|---|---|---|\n";
    for (const auto& l : d.learners) {
        auto ini = anchor_score(l, "initial");
        auto fin = anchor_score(l, "final");
        std::optional<double> change;
        if (ini && fin) change = *fin - *ini;
        const auto* total = by[l]["total_score"];
        std::string trend = "n/a";
        if (total && total->points.size() >= 2) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& [month, v] : total->points) pts.emplace_back(month, v);
            trend = text::fixed(fit_trend(pts).slope, 2);
        }
        md += "| " + l + " | " + pct(ini) + " | " + pct(fin) + " | " + pct(change) + " | " + pct(mean_of(total)) +
              " | " + trend + " |\n";
    }
    md += "\n## Categories\n\nMean monthly accuracy (%).\n\n| Learner | Review | Trap | Knowledge integration |\n"
          "|---|---|---|---|\n";
    for (const auto& l : d.learners) {
        md += "| " + l + " | " + pct(mean_of(by[l]["review_acc"])) + " | " + pct(mean_of(by[l]["trap_acc"])) +
              " | " + pct(mean_of(by[l]["ki_acc"])) + " |\n";
    }
    md += "\n## Behavior\n\n| Learner | Tokens per reasoning | Connectors per reasoning | Causal | Contrastive | "
          "Additive | Work | Rest |\n|---|---|---|---|---|---|---|---|\n";
    for (const auto& l : d.learners) {
        const auto& st = cstats[l];
        std::string work = "n/a", rest = "n/a";
        if (auto it = sr.find(l); it != sr.end()) {
            work = text::fixed(100 * it->second.overall.work_fraction(), 1);
            rest = text::fixed(100 * it->second.overall.rest_fraction(), 1);
        }
        md += "| " + l + " | " + text::fixed(avg_tokens[l], 1) + " | " + text::fixed(st.avg_per_reasoning, 2) +
              " | " + text::fixed(100 * st.distribution[0], 1) + " | " + text::fixed(100 * st.distribution[1], 1) +
              " | " + text::fixed(100 * st.distribution[2], 1) + " | " + work + " | " + rest + " |\n";
    }
    md += "\n## Self-concept\n\n| Learner | First | Last | Change |\n|---|---|---|---|\n";
    for (const auto& l : d.learners) {
        auto f = first_of(by[l]["self_concept"]);
        auto la = last_of(by[l]["self_concept"]);
        std::optional<double> change;
        if (f && la) change = *la - *f;
        md += "| " + l + " | " + pct(f) + " | " + pct(la) + " | " + pct(change) + " |\n";
    }
    md += "\n## Debates\n\n" + std::to_string(d.debates.size()) +
          " debates.\n\n| Learner | Persuasion | Resist wrong | Accept correct |\n|---|---|---|---|\n";
    for (const auto& l : d.learners) {
        auto it = ds.find(l);
        const debate::LearnerDebateStats s = it == ds.end() ? debate::LearnerDebateStats{} : it->second;
        md += "| " + l + " | " + pct(s.persuasion.rate()) + " | " + pct(s.resist_wrong.rate()) + " | " +
              pct(s.accept_correct.rate()) + " |\n";
    }
    md += "\n## Traps\n\n| Learner | Trap items | Stale source answers | Stale share |\n|---|---|---|---|\n";
    for (const auto& l : d.learners) {
        auto [stale, total] = stale_count[l];
        std::optional<double> share;
        if (total) share = 100.0 * static_cast<double>(stale) / static_cast<double>(total);
        md += "| " + l + " | " + std::to_string(total) + " | " + std::to_string(stale) + " | " + pct(share) + " |\n";
    }
    files["summary.md"] = md;
    return files;
}

void build_report(const fs::path& run_dir) {
    const auto log = run_dir / "events.jsonl";
    if (!fs::exists(log)) throw Error("no event log at " + log.string());
    std::vector<json> events;
    for (const auto& e : engine::read_events(log)) events.push_back(engine::to_json(e));
    auto files = render_report(events);
    const auto out = run_dir / "report";
    for (const auto& [rel, content] : files) {
        fs::create_directories((out / rel).parent_path());
        files::write_file_atomic(out / rel, content);
    }
}

}  // namespace lsim::analytics
