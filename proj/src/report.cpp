#include "loreseval/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "loreseval/error.hpp"

namespace loreseval::report {

namespace {

using nlohmann::json;

std::string_view scale_name(MetricScale scale) {
  return scale == MetricScale::Fraction ? "fraction" : "percent";
}

json tokenizer_json(const metrics::TokenizerConfig& t) {
  return {{"tokenizer", metrics::to_string(t.scheme)}, {"lowercase", t.lowercase}};
}

json configs_json(const metrics::EvaluateConfigs& c) {
  return {
      {"bleu",
       {{"max_order", c.bleu.max_order},
        {"smoothing", metrics::to_string(c.bleu.smoothing)},
        {"lowercase", c.bleu.lowercase},
        {"tokenizer", metrics::to_string(c.bleu.scheme)}}},
      {"ter", tokenizer_json(c.ter)},
      {"chrf",
       {{"char_order", c.chrf.char_order},
        {"beta", c.chrf.beta},
        {"strip_whitespace", c.chrf.strip_whitespace},
        {"lowercase", c.chrf.lowercase}}},
      {"f1", tokenizer_json(c.f1)},
  };
}

std::string chrf_label(double beta) {
  if (beta == std::floor(beta)) return fmt::format("ChrF{}", static_cast<int>(beta));
  return fmt::format("ChrF(b={})", beta);
}

std::string optional_cell(const std::optional<double>& v, int decimals) {
  return v ? fmt::format("{:.{}f}", *v, decimals) : std::string("-");
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::optional<MetricName> parse_metric(std::string_view name) {
  if (name == "bleu") return MetricName::Bleu;
  if (name == "ter") return MetricName::Ter;
  if (name == "chrf") return MetricName::Chrf;
  return std::nullopt;
}

std::string_view to_string(MetricName metric) {
  switch (metric) {
    case MetricName::Bleu: return "bleu";
    case MetricName::Ter: return "ter";
    case MetricName::Chrf: return "chrf";
  }
  return "bleu";
}

bool higher_is_better(MetricName metric) { return metric != MetricName::Ter; }

std::string metric_header(MetricName metric, double chrf_beta) {
  switch (metric) {
    case MetricName::Bleu: return "BLEU ↑";
    case MetricName::Ter: return "TER ↓";
    case MetricName::Chrf: return chrf_label(chrf_beta) + " ↑";
  }
  return {};
}

double display_bleu(double bleu) { return green::round_to(bleu, 1); }

double display_fraction(double value, MetricScale scale) {
  return scale == MetricScale::Fraction ? green::round_to(value, 3)
                                        : green::round_to(value * 100.0, 1);
}

json to_json(const metrics::MetricReport& r, MetricScale scale) {
  return {
      {"bleu", display_bleu(r.bleu)},
      {"ter", display_fraction(r.ter, scale)},
      {"chrf", display_fraction(r.chrf, scale)},
      {"f1", display_fraction(r.f1, scale)},
      {"n_segments", r.n_segments},
      {"metric_scale", scale_name(scale)},
      {"direction", {{"bleu", "higher"}, {"ter", "lower"}, {"chrf", "higher"}, {"f1", "higher"}}},
      {"configs", configs_json(r.configs)},
  };
}

std::string render_table(const metrics::MetricReport& r, MetricScale scale) {
  const int decimals = scale == MetricScale::Fraction ? 3 : 1;
  std::string out;
  out += fmt::format("{:<10} {:>10}\n", "Metric", "Score");
  out += fmt::format("{:<10} {:>10.1f}\n", metric_header(MetricName::Bleu), display_bleu(r.bleu));
  out += fmt::format("{:<10} {:>10.{}f}\n", metric_header(MetricName::Ter),
                     display_fraction(r.ter, scale), decimals);
  out += fmt::format("{:<10} {:>10.{}f}\n", metric_header(MetricName::Chrf, r.configs.chrf.beta),
                     display_fraction(r.chrf, scale), decimals);
  out += fmt::format("{:<10} {:>10.{}f}\n", "F1 ↑", display_fraction(r.f1, scale), decimals);
  out += fmt::format("segments: {}  lowercase: {}  tokenizer: {}  scale: {}\n", r.n_segments,
                     r.configs.bleu.lowercase ? "yes" : "no",
                     metrics::to_string(r.configs.bleu.scheme), scale_name(scale));
  return out;
}

std::string format_improvement(double percent) {
  return fmt::format("{:+.1f}% ({:+.0f}%)", percent, std::round(percent));
}

std::optional<double> SystemEntry::metric(MetricName name) const {
  switch (name) {
    case MetricName::Bleu: return bleu;
    case MetricName::Ter: return ter;
    case MetricName::Chrf: return chrf;
  }
  return std::nullopt;
}

std::vector<SystemEntry> parse_entries(const json& j) {
  const json& list = j.is_object() && j.contains("entries") ? j.at("entries") : j;
  if (!list.is_array()) {
    throw Error(ErrorCode::SchemaError, "entries must be a JSON array");
  }
  std::vector<SystemEntry> entries;
  std::size_t index = 0;
  for (const json& item : list) {
    ++index;
    if (!item.is_object() || !item.contains("system") || !item.at("system").is_string()) {
      throw Error(ErrorCode::SchemaError, "entry needs a string 'system'", index);
    }
    SystemEntry e;
    e.system = item.at("system").get<std::string>();
    e.team = item.value("team", std::string{});
    auto number = [&](const char* key) -> std::optional<double> {
      if (!item.contains(key) || item.at(key).is_null()) return std::nullopt;
      if (!item.at(key).is_number()) {
        throw Error(ErrorCode::SchemaError, std::string("'") + key + "' must be a number", index);
      }
      return item.at(key).get<double>();
    };
    e.bleu = number("bleu");
    e.ter = number("ter");
    e.chrf = number("chrf");
    if (!e.bleu && !e.ter && !e.chrf) {
      throw Error(ErrorCode::SchemaError, "entry '" + e.system + "' has no metric", index);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

ComparisonTable build_comparison(std::vector<SystemEntry> entries, MetricName sort_key,
                                 const std::string& baseline) {
  if (entries.size() < 2) {
    throw ComparisonError("a comparison needs at least two entries");
  }
  if (baseline.empty()) throw ComparisonError("no baseline system given (--baseline)");

  const bool descending = higher_is_better(sort_key);
  std::stable_sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
    const auto va = a.metric(sort_key);
    const auto vb = b.metric(sort_key);
    if (!va || !vb) return va.has_value() && !vb.has_value();
    return descending ? *va > *vb : *va < *vb;
  });

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].system == baseline || entries[i].label() == baseline) hits.push_back(i);
  }
  if (hits.empty()) throw ComparisonError("baseline '" + baseline + "' not found");
  if (hits.size() > 1) {
    throw ComparisonError("baseline '" + baseline + "' is ambiguous; use team/system");
  }

  ComparisonTable table;
  table.sort_key = sort_key;
  table.baseline = hits.front();
  const auto& base = entries[table.baseline].bleu;
  for (const auto& e : entries) {
    if (e.bleu && base && *base > 0.0) {
      table.improvement.push_back(metrics::relative_improvement(*e.bleu, *base));
    } else {
      table.improvement.emplace_back();
    }
  }
  table.entries = std::move(entries);
  return table;
}

json to_json(const ComparisonTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    json row = {{"team", e.team},
                {"system", e.system},
                {"bleu", optional_json(e.bleu)},
                {"ter", optional_json(e.ter)},
                {"chrf", optional_json(e.chrf)},
                {"baseline", i == t.baseline}};
    const auto& imp = t.improvement[i];
    row["relative_improvement"] = imp ? json(green::round_to(*imp, 1)) : json(nullptr);
    rows.push_back(std::move(row));
  }
  json out = {{"sort", to_string(t.sort_key)},
              {"direction", {{"bleu", "higher"}, {"ter", "lower"}, {"chrf", "higher"}}},
              {"baseline", t.entries[t.baseline].label()},
              {"top", t.top().label()},
              {"entries", std::move(rows)}};
  if (const auto imp = t.top_improvement()) {
    out["top_relative_improvement"] = green::round_to(*imp, 1);
    out["top_relative_improvement_rounded"] = std::round(*imp);
  } else {
    out["top_relative_improvement"] = nullptr;
  }
  return out;
}

std::string render_table(const ComparisonTable& t) {
  std::string out = fmt::format("{:<14} {:<30} {:>8} {:>8} {:>8} {:>16}\n", "Team", "System",
                                metric_header(MetricName::Bleu), metric_header(MetricName::Ter),
                                metric_header(MetricName::Chrf), "vs baseline");
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    std::string rel = "-";
    if (i == t.baseline) {
      rel = "baseline";
    } else if (t.improvement[i]) {
      rel = format_improvement(*t.improvement[i]);
    }
    out += fmt::format("{:<14} {:<30} {:>8} {:>8} {:>8} {:>16}\n", e.team, e.system,
                       optional_cell(e.bleu, 1), optional_cell(e.ter, 3),
                       optional_cell(e.chrf, 3), rel);
  }
  if (const auto imp = t.top_improvement(); imp && t.baseline != 0) {
    out += fmt::format("{} vs {}: BLEU {} relative improvement\n", t.top().system,
                       t.entries[t.baseline].system, format_improvement(*imp));
  }
  return out;
}

json to_json(const green::EnergyReport& r) {
  return {{"system", r.run.system_id},
          {"gpu", r.profile.name},
          {"max_power_watts", r.profile.max_power_watts},
          {"utilization", r.profile.utilization},
          {"utilization_is_assumed", true},
          {"runtime_hours", r.run.runtime_hours},
          {"kwh", r.kwh},
          {"kwh_display", green::round_to(r.kwh, 1)},
          {"carbon_intensity_kg_per_kwh", r.run.region_carbon_intensity},
          {"carbon_neutral", r.carbon_neutral},
          {"kg_co2", r.kg_co2}};
}

std::string render_table(const std::vector<green::EnergyReport>& reports) {
  std::string out = fmt::format("{:<20} {:>16} {:>8} {:>10}\n", "System", "Runtime (Hours)",
                                "kWh", "kgCO2");
  for (const auto& r : reports) {
    out += fmt::format("{:<20} {:>16.2f} {:>8.1f} {:>10.3f}\n", r.run.system_id,
                       r.run.runtime_hours, green::round_to(r.kwh, 1), r.kg_co2);
  }
  if (!reports.empty()) {
    const auto& p = reports.front().profile;
    out += fmt::format(
        "Estimate assumes {} at {:.0f}% of {:.0f} W max power (an assumption, not a "
        "measurement).\n",
        p.name, p.utilization * 100.0, p.max_power_watts);
  }
  return out;
}

HumanEvalSummary summarize(const std::vector<humaneval::AnnotationRecord>& records,
                           std::string_view system_id, std::string_view direction) {
  HumanEvalSummary s;
  s.system_id = system_id;
  s.direction = direction;
  s.agreement = humaneval::agreement_report(records, system_id, direction);
  s.sqm_mean = humaneval::sqm_mean(records, system_id, direction);
  s.mqm = humaneval::mqm_weighted_score(records, system_id, direction);
  s.per_annotator =
      humaneval::mqm_error_counts(records, system_id, direction, humaneval::GroupBy::Annotator);
  s.per_category =
      humaneval::mqm_error_counts(records, system_id, direction, humaneval::GroupBy::Category);
  return s;
}

json to_json(const HumanEvalSummary& s) {
  auto table_json = [](const humaneval::CountTable& t) {
    json rows = json::object();
    for (const auto& [key, count] : t.rows) rows[key] = count;
    return rows;
  };
  json kappa = json::array();
  for (const auto& row : s.agreement.rows) {
    const auto& r = row.result;
    kappa.push_back({{"category", humaneval::taxonomy::name(row.category)},
                     {"kappa", r.degenerate ? json(nullptr) : json(r.kappa)},
                     {"p_o", r.p_o},
                     {"p_e", r.p_e},
                     {"degenerate", r.degenerate},
                     {"band", humaneval::to_string(r.band)}});
  }
  return {{"system", s.system_id},
          {"direction", s.direction},
          {"sqm_mean", s.sqm_mean},
          {"mqm", {{"total", s.mqm.total},
                   {"per_segment", s.mqm.per_segment},
                   {"segments", s.mqm.segments}}},
          {"errors_per_annotator", table_json(s.per_annotator)},
          {"errors_per_category", table_json(s.per_category)},
          {"total_errors", s.per_category.total()},
          {"agreement",
           {{"annotators", {s.agreement.annotators.first, s.agreement.annotators.second}},
            {"segments_compared", s.agreement.segments.size()},
            {"segments_skipped", s.agreement.skipped_segments},
            {"fair_or_better", s.agreement.count_fair_or_better()},
            {"categories", std::move(kappa)}}}};
}

std::string render_table(const HumanEvalSummary& s) {
  std::string out = fmt::format("Human evaluation: {} ({})\n\n", s.system_id, s.direction);
  out += fmt::format("SQM mean: {:.2f}\nMQM weighted total: {:.0f} ({:.2f} per segment, {} segments)\n\n",
                     s.sqm_mean, s.mqm.total, s.mqm.per_segment, s.mqm.segments);

  out += fmt::format("{:<24} {:>8}\n", "Annotator", "Errors");
  for (const auto& [annotator, count] : s.per_annotator.rows) {
    out += fmt::format("{:<24} {:>8}\n", annotator, count);
  }

  out += fmt::format("\n{:<24} {:>8}\n", "Error type", "Errors");
  for (std::size_t i = 0; i < s.per_category.rows.size(); ++i) {
    const auto category = humaneval::taxonomy::leaves()[i];
    const auto& [name, count] = s.per_category.rows[i];
    const bool nested = !humaneval::taxonomy::parent(category).empty();
    out += fmt::format("{:<24} {:>8}\n", (nested ? "  " : "") + name, count);
  }
  out += fmt::format("{:<24} {:>8}\n", "Total errors", s.per_category.total());

  out += fmt::format("\n{:<24} {:>10} {:>20}\n", "Error type", "Kappa", "Band");
  for (const auto& row : s.agreement.rows) {
    const auto& r = row.result;
    const std::string value = r.degenerate ? fmt::format("po = {:g}", r.p_o)
                                           : fmt::format("{:.2f}", r.kappa);
    out += fmt::format("{:<24} {:>10} {:>20}\n", humaneval::taxonomy::name(row.category), value,
                       humaneval::to_string(r.band));
  }
  out += fmt::format("Fair or better (incl. perfect observed agreement): {} of {}\n",
                     s.agreement.count_fair_or_better(), s.agreement.rows.size());
  if (s.agreement.skipped_segments > 0) {
    out += fmt::format("Segments annotated by only one annotator (skipped): {}\n",
                       s.agreement.skipped_segments);
  }
  return out;
}

}  // namespace loreseval::report
