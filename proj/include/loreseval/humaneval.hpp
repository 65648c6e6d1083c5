#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loreseval::humaneval {

// Core MQM tagset leaves, in table order.
enum class Category {
  NonTranslation,
  Addition,
  Omission,
  Mistranslation,
  UntranslatedText,
  Punctuation,
  Spelling,
  Grammar,
  Register,
  Inconsistency,
  CharacterEncoding,
};

enum class Severity { Minor, Major };

inline constexpr std::size_t kCategoryCount = 11;

struct SeverityWeights {
  double minor = 1.0;
  double major = 10.0;
  double non_translation = 25.0;
};

namespace taxonomy {

const std::array<Category, kCategoryCount>& leaves();
// Exact, case-sensitive names, e.g. "Untranslated text".
std::string_view name(Category category);
std::optional<Category> parse(std::string_view name);
// "Accuracy", "Fluency", or empty for Non-translation.
std::string_view parent(Category category);

}  // namespace taxonomy

std::string_view to_string(Severity severity);

class SqmRating {
 public:
  static constexpr int kMin = 0;
  static constexpr int kMax = 6;

  explicit SqmRating(int value);  // throws Error{SqmOutOfRange}
  int value() const noexcept { return value_; }

  // Anchor description for 0/2/4/6, empty for the intermediate levels.
  static std::string_view description(int level);

  friend bool operator==(const SqmRating&, const SqmRating&) = default;

 private:
  int value_;
};

struct MqmError {
  Category category = Category::Mistranslation;
  std::optional<Severity> severity;  // absent iff Non-translation
  std::optional<std::pair<std::size_t, std::size_t>> span;

  // Throws Error{SchemaError} when the severity rule is violated.
  void validate() const;

  friend bool operator==(const MqmError&, const MqmError&) = default;
};

double weight(const MqmError& error, const SeverityWeights& weights = {});

struct AnnotationRecord {
  std::string segment_id;
  std::string annotator_id;
  std::string system_id;
  std::string direction;
  SqmRating sqm{0};
  std::vector<MqmError> errors;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

// Line-delimited JSON bundle; blank lines are ignored. Error line numbers are
// 1-based physical lines.
std::vector<AnnotationRecord> parse_annotations(std::istream& in);
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);
std::string to_json_line(const AnnotationRecord& record);

double sqm_mean(const std::vector<AnnotationRecord>& records, std::string_view system_id,
                std::string_view direction);

enum class GroupBy { Annotator, Category };

struct CountTable {
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  std::uint64_t total() const;
  std::uint64_t at(std::string_view key) const;  // 0 when absent
};

// Annotator rows are sorted by id; category rows follow taxonomy order and
// always list all 11 leaves.
CountTable mqm_error_counts(const std::vector<AnnotationRecord>& records,
                            std::string_view system_id, std::string_view direction,
                            GroupBy group_by);

struct MqmScore {
  double total = 0.0;
  double per_segment = 0.0;
  std::size_t segments = 0;  // distinct segment ids
};

MqmScore mqm_weighted_score(const std::vector<AnnotationRecord>& records,
                            std::string_view system_id, std::string_view direction,
                            const SeverityWeights& weights = {});

enum class Band { None, Slight, Fair, Moderate, Substantial, AlmostPerfect, DegeneratePerfect };

std::string_view to_string(Band band);

struct KappaResult {
  double kappa = 0.0;  // NaN when degenerate
  double p_o = 0.0;
  double p_e = 0.0;
  bool degenerate = false;  // p_o == p_e == 1; report p_o instead of kappa
  Band band = Band::None;
  // 2x2 contingency: [a][b] with index 1 = label present.
  std::array<std::array<std::size_t, 2>, 2> table{};
};

KappaResult cohen_kappa(const std::vector<bool>& labels_a, const std::vector<bool>& labels_b);
Band kappa_band(const KappaResult& result);
Band kappa_band(double kappa);

struct AgreementRow {
  Category category;
  KappaResult result;
};

struct AgreementReport {
  std::string system_id;
  std::string direction;
  std::pair<std::string, std::string> annotators;
  std::vector<std::string> segments;   // annotated by both, sorted
  std::size_t skipped_segments = 0;    // annotated by only one annotator
  std::vector<AgreementRow> rows;      // taxonomy order

  // Rows with fair-or-better agreement, degenerate-perfect included.
  std::size_t count_fair_or_better() const;
};

// Per category, each annotator's labels are "this segment has at least one
// error of the category". Only segments annotated by both count.
AgreementReport agreement_report(const std::vector<AnnotationRecord>& records,
                                 std::string_view system_id, std::string_view direction);

}  // namespace loreseval::humaneval
