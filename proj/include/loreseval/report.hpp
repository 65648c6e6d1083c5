#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "loreseval/greenreport.hpp"
#include "loreseval/humaneval.hpp"
#include "loreseval/metrics.hpp"

namespace loreseval::report {

enum class MetricScale { Fraction, Percent };

enum class MetricName { Bleu, Ter, Chrf };

std::optional<MetricName> parse_metric(std::string_view name);
std::string_view to_string(MetricName metric);
bool higher_is_better(MetricName metric);
// "BLEU ↑", "TER ↓", "ChrF3 ↑".
std::string metric_header(MetricName metric, double chrf_beta = 3.0);

// BLEU to one decimal; fraction-scale TER/ChrF/F1 to three decimals (one
// decimal on the percent scale).
double display_bleu(double bleu);
double display_fraction(double value, MetricScale scale);

nlohmann::json to_json(const metrics::MetricReport& report, MetricScale scale);
std::string render_table(const metrics::MetricReport& report, MetricScale scale);

// "+38.7% (+39%)": one decimal, then rounded to an integer.
std::string format_improvement(double percent);

struct SystemEntry {
  std::string team;
  std::string system;
  std::optional<double> bleu;
  std::optional<double> ter;
  std::optional<double> chrf;

  std::optional<double> metric(MetricName name) const;
  std::string label() const { return team + "/" + system; }
};

// Array of {team, system, bleu?, ter?, chrf?} or {"entries": [...]}.
std::vector<SystemEntry> parse_entries(const nlohmann::json& j);

struct ComparisonTable {
  std::vector<SystemEntry> entries;  // sorted
  MetricName sort_key = MetricName::Bleu;
  std::size_t baseline = 0;          // index into entries
  // BLEU relative improvement of each row over the baseline, when defined.
  std::vector<std::optional<double>> improvement;

  const SystemEntry& top() const { return entries.front(); }
  std::optional<double> top_improvement() const { return improvement.front(); }
};

struct ComparisonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sorts by `sort_key` (ascending for TER, descending otherwise; rows lacking
// the metric go last, ties keep input order) and locates the baseline by
// system name or "team/system". Throws ComparisonError when fewer than two
// entries are given or the baseline is missing or ambiguous.
ComparisonTable build_comparison(std::vector<SystemEntry> entries, MetricName sort_key,
                                 const std::string& baseline);

nlohmann::json to_json(const ComparisonTable& table);
std::string render_table(const ComparisonTable& table);

nlohmann::json to_json(const green::EnergyReport& report);
std::string render_table(const std::vector<green::EnergyReport>& reports);

struct HumanEvalSummary {
  std::string system_id;
  std::string direction;
  double sqm_mean = 0.0;
  humaneval::MqmScore mqm;
  humaneval::CountTable per_annotator;
  humaneval::CountTable per_category;
  humaneval::AgreementReport agreement;
};

HumanEvalSummary summarize(const std::vector<humaneval::AnnotationRecord>& records,
                           std::string_view system_id, std::string_view direction);
nlohmann::json to_json(const HumanEvalSummary& summary);
std::string render_table(const HumanEvalSummary& summary);

}  // namespace loreseval::report
