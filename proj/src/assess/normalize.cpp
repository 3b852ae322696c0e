#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "lsim/assess/grading.hpp"
#include "lsim/util/text.hpp"

namespace lsim::assess {

namespace {

constexpr std::array<std::string_view, 10> kQuotes = {"\"", "'", "`", "\xE2\x80\x9C", "\xE2\x80\x9D",
                                                      "\xE2\x80\x98", "\xE2\x80\x99", "\xC2\xAB", "\xC2\xBB",
                                                      "*"};
constexpr std::array<std::string_view, 9> kTerminal = {".", ",", "!", "?", ";", ":",
                                                       "\xE3\x80\x82", "\xEF\xBC\x8C", "\xE2\x80\xA6"};

bool strip_prefix(std::string& s, std::string_view p) {
    if (s.size() >= p.size() && s.compare(0, p.size(), p) == 0) {
        s.erase(0, p.size());
        return true;
    }
    return false;
}

bool strip_suffix(std::string& s, std::string_view p) {
    if (s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0) {
        s.erase(s.size() - p.size());
        return true;
    }
    return false;
}

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

/// Whole-word occurrence of `needle` in `hay` (both already cleaned).
bool contains_phrase(const std::string& hay, const std::string& needle) {
    if (needle.empty()) return false;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        bool left = pos == 0 || !is_alnum(hay[pos - 1]);
        std::size_t end = pos + needle.size();
        bool right = end == hay.size() || !is_alnum(hay[end]);
        if (left && right) return true;
    }
    return false;
}

std::vector<std::string> alnum_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_alnum(c)) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::optional<std::string> resolve_option(const std::string& cleaned, const corpus::Question& q) {
    std::vector<std::string> labels, texts;
    for (const auto& o : q.options) {
        labels.push_back(text::to_lower(text::trim(o.label)));
        texts.push_back(clean_answer(o.text));
    }
    auto label_index = [&](std::string_view tok) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i].empty() && labels[i] == tok) return i;
        }
        return std::nullopt;
    };

    // bare label, "(b)" or "b)"
    {
        std::string s = cleaned;
        strip_prefix(s, "(");
        strip_suffix(s, ")");
        if (auto i = label_index(s)) return labels[*i];
    }
    // exact option text
    {
        std::optional<std::size_t> hit;
        int n = 0;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            if (!texts[i].empty() && texts[i] == cleaned) {
                hit = i;
                ++n;
            }
        }
        if (n == 1) return labels[*hit];
    }
    // "answer is b", "option b", "choice (b)"
    auto toks = alnum_tokens(cleaned);
    for (std::size_t t = 0; t + 1 < toks.size(); ++t) {
        bool cue = toks[t] == "option" || toks[t] == "choice" ||
                   (toks[t] == "is" && t > 0 && toks[t - 1] == "answer") || toks[t] == "answer";
        if (cue) {
            if (auto i = label_index(toks[t + 1])) return labels[*i];
        }
    }
    // full text of exactly one option (longest match wins when one text contains another)
    {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            if (contains_phrase(cleaned, texts[i])) hits.push_back(i);
        }
        std::vector<std::size_t> maximal;
        for (auto i : hits) {
            bool covered = std::any_of(hits.begin(), hits.end(), [&](std::size_t j) {
                return j != i && texts[j].size() > texts[i].size() && contains_phrase(texts[j], texts[i]);
            });
            if (!covered) maximal.push_back(i);
        }
        std::set<std::string> distinct;
        for (auto i : maximal) distinct.insert(texts[i]);
        if (distinct.size() == 1) return labels[maximal.front()];
    }
    // a single standalone label token
    {
        std::set<std::size_t> found;
        for (const auto& tok : toks) {
            if (auto i = label_index(tok)) found.insert(*i);
        }
        if (found.size() == 1) return labels[*found.begin()];
    }
    return std::nullopt;
}

}  // namespace

std::string clean_answer(std::string_view raw) {
    std::string s = text::collapse_whitespace(text::to_lower(raw));
    bool changed = true;
    while (changed && !s.empty()) {
        changed = false;
        for (auto q : kQuotes) {
            bool a = strip_prefix(s, q);
            bool b = strip_suffix(s, q);
            changed = changed || a || b;
        }
        for (auto p : kTerminal) changed = strip_suffix(s, p) || changed;
        if (changed) s = text::trim(s);
    }
    return s;
}

std::string normalize_answer(std::string_view raw, const corpus::Question& q) {
    std::string cleaned = clean_answer(raw);
    if (q.format == corpus::Format::multiple_choice && !cleaned.empty()) {
        if (auto label = resolve_option(cleaned, q)) return *label;
    }
    return cleaned;
}

}  // namespace lsim::assess
