#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lsim::corpus {

enum class Format { multiple_choice, fill_in_blank, error_correction };
enum class Category { review, trap, knowledge_integration, anchor, weekly };

std::string_view to_string(Format f);
std::string_view to_string(Category c);
std::optional<Format> parse_format(std::string_view s);
std::optional<Category> parse_category(std::string_view s);

struct Option {
    std::string label;
    std::string text;
};

struct Question {
    std::string id;
    Format format = Format::fill_in_blank;
    std::string stem;
    std::vector<Option> options;  // empty unless multiple_choice
    std::string answer_key;
    Category category = Category::weekly;
    int month = 1;
    std::optional<int> week;
    std::optional<std::string> trap_source_id;
};

struct KnowledgePoint {
    int month = 1;
    int week = 1;
    std::string topic;
    std::string teaching_content;
};

nlohmann::json to_json(const Question& q);
nlohmann::json to_json(const KnowledgePoint& kp);

/// Parsed corpus. Holds whatever the files contained; structural invariants
/// are checked separately by validate_bank().
class QuestionBank {
  public:
    std::vector<KnowledgePoint> knowledge_points;
    /// Month-file records in month order, then anchor items.
    std::vector<Question> questions;
    /// Anchor exam order, as listed in anchor.json.
    std::vector<std::string> anchor_ids;
    /// Month of the file each question / knowledge point was read from; 0 for anchor.json.
    std::vector<int> question_file_month;
    std::vector<int> knowledge_point_file_month;

    /// Rebuild the id index; call after mutating `questions`.
    void reindex();
    const Question* find(std::string_view id) const;
    const Question& at(std::string_view id) const;
    const KnowledgePoint* knowledge_point(int month, int week) const;

  private:
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Load `<dir>/months/*.json` and `<dir>/anchor.json`. Throws ParseError naming
/// file, record index and field for malformed input.
QuestionBank load_question_bank(const std::filesystem::path& dir);

/// Parse one month document; `file` is used for error messages only.
void parse_month_document(const nlohmann::json& doc, const std::string& file, QuestionBank& bank);
void parse_anchor_document(const nlohmann::json& doc, const std::string& file, QuestionBank& bank);
Question parse_question(const nlohmann::json& rec, const std::string& file, long index);

}  // namespace lsim::corpus
