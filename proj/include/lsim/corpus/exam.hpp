#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsim/corpus/question_bank.hpp"

namespace lsim::corpus {

enum class ExamKind { initial, final, weekly, monthly };

std::string_view to_string(ExamKind k);
std::optional<ExamKind> parse_exam_kind(std::string_view s);

inline constexpr std::size_t kAnchorSize = 100;
inline constexpr std::size_t kWeeklySize = 20;
inline constexpr std::size_t kReviewSize = 15;
inline constexpr std::size_t kTrapSize = 15;
inline constexpr std::size_t kIntegrationSize = 20;
inline constexpr std::size_t kMonthlySize = kReviewSize + kTrapSize + kIntegrationSize;
inline constexpr int kMonths = 12;
inline constexpr int kTeachingWeeks = 3;

/// One exam slot. `section` is the category the item is scored under, which
/// for review and K-I sections differs from the underlying weekly question's.
struct ExamItem {
    std::string question_id;
    Category section = Category::weekly;
};

struct Section {
    Category category;
    std::size_t begin;
    std::size_t end;  // exclusive
};

struct Exam {
    std::string exam_id;
    ExamKind kind = ExamKind::weekly;
    std::optional<int> month;
    std::optional<int> week;
    std::vector<ExamItem> items;
    std::vector<Section> sections;
};

nlohmann::json to_json(const Exam& exam);
Exam exam_from_json(const nlohmann::json& j);

std::string exam_id_for(ExamKind kind, std::optional<int> month, std::optional<int> week);

/// Deterministic exam assembly. Throws lsim::Error for an invalid kind/month/week
/// combination or when a section's eligible pool is too small.
Exam assemble_exam(const QuestionBank& bank, ExamKind kind, std::optional<int> month, std::optional<int> week,
                   std::uint64_t seed);

}  // namespace lsim::corpus
