#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lsim::text {

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
/// Collapse every run of whitespace to one space and trim the ends.
std::string collapse_whitespace(std::string_view s);
/// Maximal runs of non-whitespace characters.
std::vector<std::string> split_whitespace(std::string_view s);
/// Lowercased alphanumeric words (apostrophes kept inside words).
std::vector<std::string> words(std::string_view s);
std::set<std::string> word_set(std::string_view s);
/// |a ∩ b| / |a ∪ b|; two empty sets give 0.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);
/// Cut to at most max_bytes without splitting a UTF-8 sequence.
std::string truncate_utf8(std::string_view s, std::size_t max_bytes);
bool starts_with_ci(std::string_view s, std::string_view prefix);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
/// printf-style formatting of a double with a fixed number of decimals.
std::string fixed(double v, int decimals);

}  // namespace lsim::text
