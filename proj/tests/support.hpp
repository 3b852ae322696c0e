// Shared fixtures and independent oracles for the unit tests and the acceptance binary.
#pragma once

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lsim/corpus/exam.hpp"
#include "lsim/corpus/question_bank.hpp"
#include "lsim/corpus/validation.hpp"
#include "lsim/debate/debate.hpp"
#include "lsim/engine/config.hpp"
#include "lsim/error.hpp"
#include "lsim/memory/long_term.hpp"

namespace lsim::testing {

namespace fs = std::filesystem;
using nlohmann::json;

inline fs::path sample_corpus() { return LSIM_SAMPLE_CORPUS_DIR; }

class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("lsim-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }

  private:
    fs::path path_;
};

inline json read_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

inline void write_json(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(1); }

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Scripted run configuration over the sample corpus.
inline engine::RunConfig scripted_config(const fs::path& out, int months, std::uint64_t seed = 7) {
    engine::RunConfig c;
    c.corpus_path = sample_corpus();
    c.output_dir = out;
    c.months = months;
    c.seed = seed;
    return c;
}

// ---------------------------------------------------------------------------
// Corpus corruption suite: each case changes one field of one record.

struct Corruption {
    std::string name;
    std::string file;                                  // relative to the corpus root
    std::function<std::string(json& doc)> mutate;      // returns the text that names the record
};

inline json& find_item(json& doc, const std::function<bool(const json&)>& pred) {
    auto& items = doc.contains("questions") ? doc["questions"] : doc["items"];
    for (auto& q : items) {
        if (pred(q)) return q;
    }
    throw Error("corruption suite: no matching record");
}

inline auto cat_is(const std::string& c) {
    return [c](const json& q) { return q.value("category", "") == c; };
}
inline auto mc_weekly() {
    return [](const json& q) { return q.value("category", "") == "weekly" && q.value("format", "") == "multiple_choice"; };
}

inline std::vector<Corruption> corruption_suite() {
    const std::string m1 = "months/01.json", m2 = "months/02.json", m3 = "months/03.json", anchor = "anchor.json";
    std::vector<Corruption> s;
    s.push_back({"empty stem", m1, [](json& d) {
                     auto& q = find_item(d, cat_is("weekly"));
                     q["stem"] = "  ";
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"empty answer key", m2, [](json& d) {
                     auto& q = find_item(d, cat_is("trap"));
                     q["answer_key"] = "";
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"month out of range", m3, [](json& d) {
                     auto& q = find_item(d, cat_is("trap"));
                     q["month"] = 13;
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"month points at another file", m1, [](json& d) {
                     auto& q = find_item(d, mc_weekly());
                     q["month"] = 5;
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"duplicate option label", m1, [](json& d) {
                     auto& q = find_item(d, mc_weekly());
                     q["options"][1]["label"] = q["options"][0]["label"];
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"key is not an option", m2, [](json& d) {
                     auto& q = find_item(d, mc_weekly());
                     q["answer_key"] = "Z";
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"single option", m3, [](json& d) {
                     auto& q = find_item(d, mc_weekly());
                     q["options"] = json::array({q["options"][0]});
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"weekly item week 5", m1, [](json& d) {
                     auto& q = find_item(d, cat_is("weekly"));
                     q["week"] = 5;
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"weekly item without week", m2, [](json& d) {
                     auto& q = find_item(d, cat_is("weekly"));
                     q.erase("week");
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"dangling trap source", m2, [](json& d) {
                     auto& q = find_item(d, cat_is("trap"));
                     q["trap_source_id"] = "no-such-question";
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"trap without source", m3, [](json& d) {
                     auto& q = find_item(d, cat_is("trap"));
                     q.erase("trap_source_id");
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"trap key equals source key", m1, [](json& d) {
                     auto fib = [](const json& x) { return x.value("format", "") == "fill_in_blank"; };
                     auto& q = find_item(d, [&](const json& x) {
                         if (x.value("category", "") != "trap" || !fib(x)) return false;
                         const auto src = x["trap_source_id"];
                         for (const auto& y : d["questions"]) {
                             if (y["id"] == src) return fib(y);
                         }
                         return false;
                     });
                     const auto src = q["trap_source_id"];
                     q["answer_key"] = find_item(d, [&](const json& x) { return x["id"] == src; })["answer_key"];
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"trap source is not weekly", m2, [](json& d) {
                     auto& q = find_item(d, cat_is("trap"));
                     const auto self = q["id"];
                     q["trap_source_id"] =
                         find_item(d, [&](const json& x) { return x["category"] == "trap" && x["id"] != self; })["id"];
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"weekly item with trap source", m3, [](json& d) {
                     auto& q = find_item(d, cat_is("weekly"));
                     q["trap_source_id"] = q["id"];
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"month item claims anchor", m1, [](json& d) {
                     auto& q = find_item(d, cat_is("trap"));
                     q["category"] = "anchor";
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"anchor item claims weekly", anchor, [](json& d) {
                     auto& q = d["items"][3];
                     q["category"] = "weekly";
                     return q["id"].get<std::string>();
                 }});
    s.push_back({"duplicate id", m2, [](json& d) {
                     auto& qs = d["questions"];
                     qs[1]["id"] = qs[0]["id"];
                     return qs[0]["id"].get<std::string>();
                 }});
    s.push_back({"unknown format", m1, [](json& d) {
                     auto& qs = d["questions"];
                     qs[4]["format"] = "essay";
                     return std::string("record 4");
                 }});
    s.push_back({"empty teaching content", m2, [](json& d) {
                     d["knowledge_points"][1]["teaching_content"] = "";
                     return std::string("month 2, week 2");
                 }});
    s.push_back({"knowledge point week 7", m3, [](json& d) {
                     d["knowledge_points"][2]["week"] = 7;
                     return std::string("month 3, week 7");
                 }});
    return s;
}

struct CorruptionResult {
    bool detected = false;  // at least one diagnostic names the record
    std::size_t diagnostics = 0;
    std::string first;
};

/// Copy the sample corpus to `scratch`, apply `c`, then load and validate it.
inline CorruptionResult run_corruption(const Corruption& c, const fs::path& scratch) {
    fs::remove_all(scratch);
    fs::copy(sample_corpus(), scratch, fs::copy_options::recursive);
    auto doc = read_json(scratch / c.file);
    const auto name = c.mutate(doc);
    write_json(scratch / c.file, doc);

    CorruptionResult r;
    try {
        auto bank = corpus::load_question_bank(scratch);
        auto rep = corpus::validate_bank(bank);
        r.diagnostics = rep.violations.size();
        for (const auto& v : rep.violations) {
            if ((v.question_id && *v.question_id == name) || v.message.find(name) != std::string::npos) {
                r.detected = true;
                if (r.first.empty()) r.first = v.code + ": " + v.message;
            }
        }
    } catch (const ParseError& e) {
        r.diagnostics = 1;
        const std::string what = e.what();
        r.detected = what.find(name) != std::string::npos && what.find(c.file.substr(c.file.find('/') + 1)) !=
                                                                 std::string::npos;
        r.first = what;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Grading fixtures.

inline corpus::Question fib_question(std::string id, std::string key) {
    corpus::Question q;
    q.id = std::move(id);
    q.format = corpus::Format::fill_in_blank;
    q.stem = "The window was ___ (break) by the wind.";
    q.answer_key = std::move(key);
    return q;
}

inline corpus::Question mc_question() {
    corpus::Question q;
    q.id = "mc";
    q.format = corpus::Format::multiple_choice;
    q.stem = "The vase is ___ (break).";
    q.options = {{"A", "break"}, {"B", "broke"}, {"C", "broken"}, {"D", "breaking"}};
    q.answer_key = "C";
    return q;
}

struct NormFixture {
    std::string raw;
    char kind;  // f = fill-in-blank, m = multiple choice, e = error correction
    std::string expected;
};

inline const std::vector<NormFixture>& normalization_fixtures() {
    static const std::vector<NormFixture> f = {
        {"broken", 'f', "broken"},
        {"Broken", 'f', "broken"},
        {"  BROKEN  ", 'f', "broken"},
        {"\"broken\"", 'f', "broken"},
        {"'broken'", 'f', "broken"},
        {"\xE2\x80\x9C" "broken" "\xE2\x80\x9D", 'f', "broken"},
        {"\xE2\x80\x98" "broken" "\xE2\x80\x99", 'f', "broken"},
        {"\xC2\xAB" "broken" "\xC2\xBB", 'f', "broken"},
        {"`broken`", 'f', "broken"},
        {"*broken*", 'f', "broken"},
        {"broken.", 'f', "broken"},
        {"broken!", 'f', "broken"},
        {"broken?", 'f', "broken"},
        {"broken;", 'f', "broken"},
        {"broken...", 'f', "broken"},
        {"\"broken.\"", 'f', "broken"},
        {"has   been\tbroken", 'f', "has been broken"},
        {"Has Broken,", 'f', "has broken"},
        {"don't", 'f', "don't"},
        {"breaking", 'f', "breaking"},
        {"", 'f', ""},
        {"   ", 'f', ""},
        {"C", 'm', "c"},
        {"c", 'm', "c"},
        {"(C)", 'm', "c"},
        {"C)", 'm', "c"},
        {"\"A\"", 'm', "a"},
        {"broken", 'm', "c"},
        {"Broken.", 'm', "c"},
        {"The answer is C", 'm', "c"},
        {"Option D", 'm', "d"},
        {"choice (b)", 'm', "b"},
        {"C. broken", 'm', "c"},
        {"D breaking", 'm', "d"},
        {"E", 'm', "e"},
        {"broken or breaking", 'm', "broken or breaking"},
        {"Has been broken.", 'e', "has been broken"},
    };
    return f;
}

inline corpus::Question fixture_question(char kind) {
    if (kind == 'm') return mc_question();
    auto q = fib_question("fib", "broken");
    if (kind == 'e') q.format = corpus::Format::error_correction;
    return q;
}

/// A trap whose key "breaking" replaces its source's "broken".
inline corpus::QuestionBank broken_breaking_bank() {
    corpus::QuestionBank bank;
    auto src = fib_question("m01w1q05", "broken");
    src.category = corpus::Category::weekly;
    src.month = 1;
    src.week = 1;
    auto trap = fib_question("m02t01", "breaking");
    trap.stem = "Listen! The window is ___ (break) in the storm.";
    trap.category = corpus::Category::trap;
    trap.month = 2;
    trap.trap_source_id = src.id;
    bank.questions = {src, trap};
    bank.reindex();
    return bank;
}

inline corpus::Exam broken_breaking_exam() {
    corpus::Exam e;
    e.exam_id = "monthly-m02";
    e.kind = corpus::ExamKind::monthly;
    e.month = 2;
    e.items = {{"m02t01", corpus::Category::trap}};
    e.sections = {{corpus::Category::trap, 0, 1}};
    return e;
}

// ---------------------------------------------------------------------------
// Oracles. Written from the definitions, without calling the code under test.

/// Persuasion / Resist Wrong / Accept Correct by direct counting over each
/// (transcript, side) pair; rates as percentages, nullopt for empty denominators.
struct BruteRates {
    std::optional<double> persuasion, resist_wrong, accept_correct;
};

inline std::map<std::string, BruteRates> brute_debate_rates(const std::vector<debate::DebateTranscript>& ts) {
    std::map<std::string, std::array<long, 6>> n;  // p_num p_den r_num r_den a_num a_den
    for (const auto& t : ts) {
        for (int side : {0, 1}) {
            auto& c = n[t.participants[side]];
            const auto& key = t.answer_key;
            const auto& me0 = t.initial_answers[side];
            const auto& me1 = t.final_answers[side];
            const auto& peer0 = t.initial_answers[1 - side];
            const auto& peer1 = t.final_answers[1 - side];
            c[1] += 1;
            c[0] += (peer1 == me0 && me1 == me0) ? 1 : 0;
            if (me0 == key && peer0 != key) {
                c[3] += 1;
                c[2] += me1 == key ? 1 : 0;
            }
            if (me0 != key && peer0 == key) {
                c[5] += 1;
                c[4] += me1 == key ? 1 : 0;
            }
        }
    }
    std::map<std::string, BruteRates> out;
    auto rate = [](long num, long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return 100.0 * static_cast<double>(num) / static_cast<double>(den);
    };
    for (const auto& [who, c] : n) out[who] = {rate(c[0], c[1]), rate(c[2], c[3]), rate(c[4], c[5])};
    return out;
}

/// Random transcripts over a small answer alphabet, so every case (agree, persuade,
/// swap, both wrong, empty denominators) occurs.
inline std::vector<debate::DebateTranscript> synthetic_transcripts(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const std::vector<std::string> names = {"deep", "surface", "lazy", "general", "solo"};
    const std::vector<std::string> answers = {"a", "b", "c"};
    auto pick = [&](const std::vector<std::string>& v) { return v[gen() % v.size()]; };
    std::vector<debate::DebateTranscript> out;
    for (std::size_t i = 0; i < n; ++i) {
        debate::DebateTranscript t;
        t.debate_id = "syn-" + std::to_string(i);
        t.question_id = "q" + std::to_string(i % 17);
        auto a = pick(names), b = pick(names);
        while (b == a) b = pick(names);
        t.participants = {a, b};
        t.answer_key = "a";
        // "solo" never starts with the key, so its Resist Wrong denominator stays empty
        auto start = [&](const std::string& who) { return who == "solo" ? answers[1 + gen() % 2] : pick(answers); };
        t.initial_answers = {start(a), start(b)};
        while (t.initial_answers[1] == t.initial_answers[0]) t.initial_answers[1] = start(b);
        switch (gen() % 4) {
            case 0: t.final_answers = t.initial_answers; break;
            case 1: t.final_answers = {t.initial_answers[0], t.initial_answers[0]}; break;
            case 2: t.final_answers = {t.initial_answers[1], t.initial_answers[1]}; break;
            default: t.final_answers = {pick(answers), pick(answers)}; break;
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// OLS slope/intercept from the 2x2 normal equations (X^T X) b = X^T y, solved by
/// Cramer's rule in long double.
inline std::pair<double, double> normal_equations(const std::vector<std::pair<double, double>>& pts) {
    long double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (auto [x, y] : pts) {
        n += 1;
        sx += x;
        sxx += static_cast<long double>(x) * x;
        sy += y;
        sxy += static_cast<long double>(x) * y;
    }
    const long double det = n * sxx - sx * sx;
    const long double slope = (n * sxy - sx * sy) / det;
    const long double intercept = (sxx * sy - sx * sxy) / det;
    return {static_cast<double>(slope), static_cast<double>(intercept)};
}

/// Connector counts by walking characters: at every word start, try the lexicon's
/// phrases from longest to shortest and take the first that matches whole-word.
inline std::array<long, 3> char_walk_connectors(const std::string& text,
                                                const std::array<std::vector<std::string>, 3>& lists) {
    std::vector<std::pair<std::string, int>> phrases;
    for (int t = 0; t < 3; ++t) {
        for (const auto& p : lists[t]) {
            std::string low;
            for (char ch : p) low += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            phrases.emplace_back(low, t);
        }
    }
    std::stable_sort(phrases.begin(), phrases.end(),
                     [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    auto is_word = [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '\'';
    };
    std::string low;
    for (char ch : text) low += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    std::array<long, 3> counts{};
    std::size_t i = 0;
    while (i < low.size()) {
        if (!is_word(low[i]) || (i > 0 && is_word(low[i - 1]))) {
            ++i;
            continue;
        }
        bool hit = false;
        for (const auto& [p, t] : phrases) {
            if (low.compare(i, p.size(), p) != 0) continue;
            const std::size_t end = i + p.size();
            if (end < low.size() && is_word(low[end])) continue;
            // phrase words must be separated by single spaces in the text as written
            counts[t] += 1;
            i = end;
            hit = true;
            break;
        }
        if (!hit) {
            while (i < low.size() && is_word(low[i])) ++i;
        }
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Random memory stores.
inline const std::vector<std::string> kStemWords = {"the",  "window", "was",   "broken", "by",    "wind",  "she",
                                             "has",  "lived",  "here",  "since", "2010",  "if",    "it",
                                             "rains", "we",    "will",  "stay",  "home",  "book",  "which"};

inline std::string random_stem(std::mt19937_64& gen) {
    std::string s;
    const auto n = 3 + gen() % 8;
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.empty()) s += ' ';
        s += kStemWords[gen() % kStemWords.size()];
    }
    return s;
}

inline memory::MemoryEntry random_entry(std::mt19937_64& gen, const std::string& owner) {
    memory::MemoryEntry e;
    e.owner = owner;
    e.month = 1 + static_cast<int>(gen() % 12);
    switch (gen() % 8) {
        case 0:
            e.kind = memory::EntryKind::knowledge_summary;
            e.payload = {{"text", "notes"}};
            if (gen() % 4) e.week = 1 + static_cast<int>(gen() % 3);
            break;
        case 1: e.kind = memory::EntryKind::reflection; e.payload = {{"text", "reflection"}}; break;
        case 2:
            e.kind = memory::EntryKind::exam_answer;
            e.payload = {{"exam_id", "x"}, {"question_id", "q"}, {"stem", random_stem(gen)}, {"answer", "a"}};
            break;
        case 3:
            e.kind = memory::EntryKind::teacher_feedback;
            e.payload = {{"text", "feedback"}, {"batch", 1}};
            e.week = 1 + static_cast<int>(gen() % 3);
            break;
        case 4:
            e.kind = memory::EntryKind::debate_record;
            e.payload = {{"debate_id", "d"}, {"question_id", "q"}, {"stem", random_stem(gen)}, {"thread", "t"}};
            break;
        case 5:
            e.kind = memory::EntryKind::score_record;
            e.payload = {{"exam_id", "m"}, {"exam_kind", gen() % 2 ? "monthly" : "weekly"}, {"score", 50}};
            break;
        case 6: e.kind = memory::EntryKind::self_concept_record; e.payload = {{"score", 40}}; break;
        default: e.kind = memory::EntryKind::year_consolidation; e.payload = {{"text", "year"}}; break;
    }
    return e;
}

/// Jaccard similarity of two word sets via std::set_intersection.
inline double jaccard_oracle(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::vector<std::string> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    return uni.empty() ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

}  // namespace lsim::testing
