#include "loreseval/humaneval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "loreseval/error.hpp"

namespace loreseval::humaneval {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kCategoryCount> kNames = {
    "Non-translation", "Addition",    "Omission",    "Mistranslation",
    "Untranslated text", "Punctuation", "Spelling",  "Grammar",
    "Register",        "Inconsistency", "Character encoding",
};

std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }

std::vector<const AnnotationRecord*> matching(const std::vector<AnnotationRecord>& records,
                                              std::string_view system_id,
                                              std::string_view direction) {
  std::vector<const AnnotationRecord*> out;
  for (const auto& r : records) {
    if (r.system_id == system_id && r.direction == direction) out.push_back(&r);
  }
  if (out.empty()) {
    throw Error(ErrorCode::NoMatchingRecords, "no records for system '" +
                                                  std::string(system_id) + "' direction '" +
                                                  std::string(direction) + "'");
  }
  return out;
}

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SchemaError, what, line);
}

std::string id_field(const json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) schema_error(line, std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (v.is_string()) {
    if (v.get_ref<const std::string&>().empty()) {
      schema_error(line, std::string("field '") + key + "' is empty");
    }
    return v.get<std::string>();
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  schema_error(line, std::string("field '") + key + "' must be a string or integer");
}

MqmError parse_error(const json& e, std::size_t line) {
  if (!e.is_object()) schema_error(line, "error entries must be objects");
  for (const auto& item : e.items()) {
    const auto& key = item.key();
    if (key != "category" && key != "severity" && key != "span") {
      schema_error(line, "unexpected error field '" + key + "'");
    }
  }
  if (!e.contains("category") || !e.at("category").is_string()) {
    schema_error(line, "error needs a string 'category'");
  }
  const auto& category_name = e.at("category").get_ref<const std::string&>();
  const auto category = taxonomy::parse(category_name);
  if (!category) {
    throw Error(ErrorCode::UnknownCategory,
                "'" + category_name + "' is not in the core MQM tagset", line);
  }

  MqmError out;
  out.category = *category;
  if (e.contains("severity") && !e.at("severity").is_null()) {
    const json& s = e.at("severity");
    if (s == "minor") {
      out.severity = Severity::Minor;
    } else if (s == "major") {
      out.severity = Severity::Major;
    } else {
      schema_error(line, "severity must be \"minor\" or \"major\"");
    }
  }
  if (e.contains("span") && !e.at("span").is_null()) {
    const json& s = e.at("span");
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() ||
        !s[1].is_number_unsigned() || s[0].get<std::size_t>() > s[1].get<std::size_t>()) {
      schema_error(line, "span must be [start, end] with 0 <= start <= end");
    }
    out.span = std::make_pair(s[0].get<std::size_t>(), s[1].get<std::size_t>());
  }
  try {
    out.validate();
  } catch (const Error& err) {
    schema_error(line, err.what());
  }
  return out;
}

AnnotationRecord parse_record(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) schema_error(line, "record must be a JSON object");
  static const std::set<std::string> allowed = {"segment_id", "annotator_id", "system_id",
                                                "direction",  "sqm",          "errors"};
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      schema_error(line, "unexpected field '" + item.key() + "'");
    }
  }

  AnnotationRecord r;
  r.segment_id = id_field(obj, "segment_id", line);
  r.annotator_id = id_field(obj, "annotator_id", line);
  r.system_id = id_field(obj, "system_id", line);
  r.direction = id_field(obj, "direction", line);

  if (!obj.contains("sqm") || !obj.at("sqm").is_number_integer()) {
    schema_error(line, "'sqm' must be an integer");
  }
  const auto sqm = obj.at("sqm").get<long long>();
  if (sqm < SqmRating::kMin || sqm > SqmRating::kMax) {
    throw Error(ErrorCode::SqmOutOfRange,
                "sqm " + std::to_string(sqm) + " outside 0..6", line);
  }
  r.sqm = SqmRating(static_cast<int>(sqm));

  if (!obj.contains("errors") || !obj.at("errors").is_array()) {
    schema_error(line, "'errors' must be an array");
  }
  for (const json& e : obj.at("errors")) r.errors.push_back(parse_error(e, line));
  return r;
}

}  // namespace

namespace taxonomy {

const std::array<Category, kCategoryCount>& leaves() {
  static const std::array<Category, kCategoryCount> all = {
      Category::NonTranslation, Category::Addition,         Category::Omission,
      Category::Mistranslation, Category::UntranslatedText, Category::Punctuation,
      Category::Spelling,       Category::Grammar,          Category::Register,
      Category::Inconsistency,  Category::CharacterEncoding,
  };
  return all;
}

std::string_view name(Category category) { return kNames[index_of(category)]; }

std::optional<Category> parse(std::string_view text) {
  for (Category c : leaves()) {
    if (name(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view parent(Category category) {
  switch (category) {
    case Category::NonTranslation:
      return "";
    case Category::Addition:
    case Category::Omission:
    case Category::Mistranslation:
    case Category::UntranslatedText:
      return "Accuracy";
    default:
      return "Fluency";
  }
}

}  // namespace taxonomy

std::string_view to_string(Severity severity) {
  return severity == Severity::Minor ? "minor" : "major";
}

SqmRating::SqmRating(int value) : value_(value) {
  if (value < kMin || value > kMax) {
    throw Error(ErrorCode::SqmOutOfRange, "sqm " + std::to_string(value) + " outside 0..6");
  }
}

std::string_view SqmRating::description(int level) {
  switch (level) {
    case 6: return "Perfect meaning and grammar";
    case 4: return "Most meaning preserved and few grammar mistakes";
    case 2: return "Some meaning preserved";
    case 0: return "Nonsense/no meaning preserved";
    default: return "";
  }
}

void MqmError::validate() const {
  const bool non_translation = category == Category::NonTranslation;
  if (non_translation && severity) {
    throw Error(ErrorCode::SchemaError, "Non-translation errors carry no severity");
  }
  if (!non_translation && !severity) {
    throw Error(ErrorCode::SchemaError,
                std::string(taxonomy::name(category)) + " error needs a severity");
  }
}

double weight(const MqmError& error, const SeverityWeights& weights) {
  if (error.category == Category::NonTranslation) return weights.non_translation;
  return error.severity == Severity::Major ? weights.major : weights.minor;
}

std::vector<AnnotationRecord> parse_annotations(std::istream& in) {
  std::vector<AnnotationRecord> records;
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    AnnotationRecord r = parse_record(text, line);
    if (!keys.emplace(r.segment_id, r.annotator_id, r.system_id).second) {
      throw Error(ErrorCode::DuplicateKey,
                  "duplicate (segment_id, annotator_id, system_id) = (" + r.segment_id +
                      ", " + r.annotator_id + ", " + r.system_id + ")",
                  line);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_annotations(in);
}

std::string to_json_line(const AnnotationRecord& record) {
  json errors = json::array();
  for (const MqmError& e : record.errors) {
    json item = {{"category", taxonomy::name(e.category)}};
    if (e.severity) item["severity"] = to_string(*e.severity);
    if (e.span) item["span"] = {e.span->first, e.span->second};
    errors.push_back(std::move(item));
  }
  const json obj = {{"segment_id", record.segment_id},
                    {"annotator_id", record.annotator_id},
                    {"system_id", record.system_id},
                    {"direction", record.direction},
                    {"sqm", record.sqm.value()},
                    {"errors", std::move(errors)}};
  return obj.dump();
}

double sqm_mean(const std::vector<AnnotationRecord>& records, std::string_view system_id,
                std::string_view direction) {
  const auto matched = matching(records, system_id, direction);
  long long sum = 0;
  for (const auto* r : matched) sum += r->sqm.value();
  return static_cast<double>(sum) / static_cast<double>(matched.size());
}

std::uint64_t CountTable::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : rows) sum += row.second;
  return sum;
}

std::uint64_t CountTable::at(std::string_view key) const {
  for (const auto& row : rows) {
    if (row.first == key) return row.second;
  }
  return 0;
}

CountTable mqm_error_counts(const std::vector<AnnotationRecord>& records,
                            std::string_view system_id, std::string_view direction,
                            GroupBy group_by) {
  const auto matched = matching(records, system_id, direction);
  CountTable table;
  if (group_by == GroupBy::Annotator) {
    std::map<std::string, std::uint64_t> per_annotator;
    for (const auto* r : matched) per_annotator[r->annotator_id] += r->errors.size();
    table.rows.assign(per_annotator.begin(), per_annotator.end());
  } else {
    std::array<std::uint64_t, kCategoryCount> per_category{};
    for (const auto* r : matched) {
      for (const MqmError& e : r->errors) ++per_category[index_of(e.category)];
    }
    for (Category c : taxonomy::leaves()) {
      table.rows.emplace_back(std::string(taxonomy::name(c)), per_category[index_of(c)]);
    }
  }
  return table;
}

MqmScore mqm_weighted_score(const std::vector<AnnotationRecord>& records,
                            std::string_view system_id, std::string_view direction,
                            const SeverityWeights& weights) {
  const auto matched = matching(records, system_id, direction);
  MqmScore score;
  std::set<std::string> segments;
  for (const auto* r : matched) {
    segments.insert(r->segment_id);
    for (const MqmError& e : r->errors) score.total += weight(e, weights);
  }
  score.segments = segments.size();
  score.per_segment = score.total / static_cast<double>(score.segments);
  return score;
}

std::string_view to_string(Band band) {
  switch (band) {
    case Band::None: return "none";
    case Band::Slight: return "slight";
    case Band::Fair: return "fair";
    case Band::Moderate: return "moderate";
    case Band::Substantial: return "substantial";
    case Band::AlmostPerfect: return "almost-perfect";
    case Band::DegeneratePerfect: return "degenerate-perfect";
  }
  return "none";
}

Band kappa_band(double kappa) {
  // Tolerance keeps values such as 0.2000000000000001 in the lower band.
  constexpr double eps = 1e-9;
  if (kappa <= eps) return Band::None;
  if (kappa <= 0.20 + eps) return Band::Slight;
  if (kappa <= 0.40 + eps) return Band::Fair;
  if (kappa <= 0.60 + eps) return Band::Moderate;
  if (kappa <= 0.80 + eps) return Band::Substantial;
  return Band::AlmostPerfect;
}

Band kappa_band(const KappaResult& result) {
  return result.degenerate ? Band::DegeneratePerfect : kappa_band(result.kappa);
}

KappaResult cohen_kappa(const std::vector<bool>& labels_a, const std::vector<bool>& labels_b) {
  if (labels_a.size() != labels_b.size()) {
    throw Error(ErrorCode::LengthMismatch, "label vectors differ in length");
  }
  if (labels_a.empty()) throw Error(ErrorCode::EmptyInput, "no labels");

  KappaResult r;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    ++r.table[labels_a[i] ? 1 : 0][labels_b[i] ? 1 : 0];
  }
  const std::size_t n = labels_a.size();
  const std::size_t agree = r.table[0][0] + r.table[1][1];
  const std::size_t a_yes = r.table[1][0] + r.table[1][1];
  const std::size_t b_yes = r.table[0][1] + r.table[1][1];
  const std::size_t chance_num = a_yes * b_yes + (n - a_yes) * (n - b_yes);

  const auto nd = static_cast<double>(n);
  r.p_o = static_cast<double>(agree) / nd;
  r.p_e = static_cast<double>(chance_num) / (nd * nd);
  // Exact integer test: p_e == 1 only when both raters use a single, shared label.
  r.degenerate = chance_num == n * n;
  r.kappa = r.degenerate ? std::numeric_limits<double>::quiet_NaN()
                         : (r.p_o - r.p_e) / (1.0 - r.p_e);
  r.band = kappa_band(r);
  return r;
}

std::size_t AgreementReport::count_fair_or_better() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& row) {
    return row.result.band >= Band::Fair;
  }));
}

AgreementReport agreement_report(const std::vector<AnnotationRecord>& records,
                                 std::string_view system_id, std::string_view direction) {
  const auto matched = matching(records, system_id, direction);

  std::map<std::string, std::map<std::string, const AnnotationRecord*>> by_annotator;
  for (const auto* r : matched) by_annotator[r->annotator_id][r->segment_id] = r;
  if (by_annotator.size() != 2) {
    throw Error(ErrorCode::AnnotatorCountNotTwo,
                std::to_string(by_annotator.size()) + " annotators for " +
                    std::string(system_id) + "/" + std::string(direction) + ", need 2");
  }

  AgreementReport report;
  report.system_id = system_id;
  report.direction = direction;
  const auto& [first_id, first] = *by_annotator.begin();
  const auto& [second_id, second] = *std::next(by_annotator.begin());
  report.annotators = {first_id, second_id};

  std::set<std::string> all_segments;
  for (const auto& [segment, _] : first) all_segments.insert(segment);
  for (const auto& [segment, _] : second) all_segments.insert(segment);
  for (const auto& segment : all_segments) {
    if (first.contains(segment) && second.contains(segment)) {
      report.segments.push_back(segment);
    } else {
      ++report.skipped_segments;
    }
  }
  if (report.segments.empty()) {
    throw Error(ErrorCode::NoMatchingRecords, "the two annotators share no segments");
  }

  auto flags = [&](const std::map<std::string, const AnnotationRecord*>& annotations,
                   Category category) {
    std::vector<bool> out;
    out.reserve(report.segments.size());
    for (const auto& segment : report.segments) {
      const auto& errors = annotations.at(segment)->errors;
      out.push_back(std::any_of(errors.begin(), errors.end(),
                                [&](const MqmError& e) { return e.category == category; }));
    }
    return out;
  };

  for (Category c : taxonomy::leaves()) {
    report.rows.push_back({c, cohen_kappa(flags(first, c), flags(second, c))});
  }
  return report;
}

}  // namespace loreseval::humaneval
