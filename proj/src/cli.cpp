#include "loreseval/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <optional>

#include "json.hpp"
#include "loreseval/corpus.hpp"
#include "loreseval/error.hpp"
#include "loreseval/greenreport.hpp"
#include "loreseval/hpo.hpp"
#include "loreseval/humaneval.hpp"
#include "loreseval/metrics.hpp"
#include "loreseval/report.hpp"
#include "loreseval/runlog.hpp"

namespace loreseval::cli {

namespace {

using nlohmann::json;

struct Options {
  bool json_output = false;
  bool no_log = false;

  // evaluate
  std::string hyp_path;
  std::string ref_path;
  bool lowercase = false;
  int chrf_beta = 3;
  std::string metric_scale = "fraction";

  // compare
  std::string entries_path;
  std::string baseline;
  std::string sort = "bleu";

  // agree
  std::string annotations_path;
  std::string system;
  std::string direction;

  // green
  double power_watts = 400.0;
  double utilization = 0.8;
  std::vector<double> hours;
  std::vector<std::string> run_names;
  std::optional<double> intensity;
  bool carbon_neutral = false;
  std::string gpu = "gpu";

  // split / dedup
  std::string src_path;
  std::string tgt_path;
  std::string src_lang;
  std::string tgt_lang;
  std::string ratio = "0.8,0.1,0.1";
  std::optional<std::uint64_t> seed;
  std::string out_dir;

  // hpo
  std::string grid_path;
  std::string template_path;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::EmptyFile:
    case ErrorCode::EncodingError:
    case ErrorCode::BlankLine:
      return kFileError;
    case ErrorCode::LineCountMismatch:
    case ErrorCode::LengthMismatch:
      return kAlignment;
    default:
      return kInvalidInput;
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

void emit(std::ostream& out, const Options& o, const json& payload, const std::string& table) {
  if (o.json_output) {
    out << payload.dump(2) << '\n';
  } else {
    out << table;
  }
}

void log(const Options& o, const std::string& command, const json& payload) {
  if (!o.no_log) runlog::log_run(runlog::default_log_dir(), command, payload);
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto corpus = corpus::load_parallel(o.hyp_path, o.ref_path, "hyp", "ref");
  const auto configs =
      metrics::EvaluateConfigs::with_lowercase(o.lowercase, static_cast<double>(o.chrf_beta));
  const auto scale = o.metric_scale == "percent" ? report::MetricScale::Percent
                                                 : report::MetricScale::Fraction;
  const auto result = metrics::evaluate_all(corpus::texts(corpus.source),
                                            corpus::texts(corpus.target), configs);
  json payload = report::to_json(result, scale);
  payload["hypotheses"] = o.hyp_path;
  payload["references"] = o.ref_path;
  emit(out, o, payload, report::render_table(result, scale));
  log(o, "evaluate", payload);
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  auto entries = report::parse_entries(read_json_file(o.entries_path));
  const auto sort_key = report::parse_metric(o.sort).value_or(report::MetricName::Bleu);
  report::ComparisonTable table;
  try {
    table = report::build_comparison(std::move(entries), sort_key, o.baseline);
  } catch (const report::ComparisonError& e) {
    err << "compare: " << e.what() << '\n';
    return kComparison;
  }
  const json payload = report::to_json(table);
  emit(out, o, payload, report::render_table(table));
  log(o, "compare", payload);
  return kOk;
}

int cmd_agree(const Options& o, std::ostream& out) {
  const auto records = humaneval::load_annotations(o.annotations_path);
  const auto summary = report::summarize(records, o.system, o.direction);
  const json payload = report::to_json(summary);
  emit(out, o, payload, report::render_table(summary));
  log(o, "agree", payload);
  return kOk;
}

int cmd_green(const Options& o, std::ostream& out) {
  green::GpuProfile profile{o.gpu, o.power_watts, o.utilization};
  if (!o.run_names.empty() && o.run_names.size() != o.hours.size()) {
    throw Error(ErrorCode::InvalidArgument, "--system must be given once per --hours value");
  }
  std::vector<green::EnergyReport> reports;
  json runs = json::array();
  for (std::size_t i = 0; i < o.hours.size(); ++i) {
    const std::string name = o.run_names.empty() ? "run" + std::to_string(i + 1) : o.run_names[i];
    reports.push_back(green::green_report(profile, name, o.hours[i], o.intensity, o.carbon_neutral));
    runs.push_back(report::to_json(reports.back()));
  }
  json payload = {{"runs", runs},
                  {"note", "utilization is an assumed fraction of max power, not a measurement"}};
  emit(out, o, payload, report::render_table(reports));
  log(o, "green", payload);
  return kOk;
}

int cmd_split(const Options& o, std::ostream& out) {
  const auto corpus = corpus::load_parallel(o.src_path, o.tgt_path, o.src_lang, o.tgt_lang);
  const auto ratio = corpus::SplitRatio::parse(o.ratio);
  const auto splits = corpus::split(corpus, ratio, o.seed);
  corpus::write_splits(splits, o.out_dir);
  const json payload = {{"input_pairs", corpus.size()},
                        {"duplicates_removed", splits.duplicates_removed},
                        {"cross_split_dropped", splits.cross_split_dropped},
                        {"train", splits.train.size()},
                        {"valid", splits.validation.size()},
                        {"test", splits.test.size()},
                        {"seed", o.seed ? json(*o.seed) : json(nullptr)},
                        {"out_dir", o.out_dir}};
  const std::string table = fmt::format(
      "input pairs: {}\nduplicates removed: {}\ncross-split dropped: {}\n"
      "train: {}\nvalid: {}\ntest: {}\nwritten to: {}\n",
      corpus.size(), splits.duplicates_removed, splits.cross_split_dropped, splits.train.size(),
      splits.validation.size(), splits.test.size(), o.out_dir);
  emit(out, o, payload, table);
  log(o, "split", payload);
  return kOk;
}

int cmd_dedup(const Options& o, std::ostream& out) {
  const auto corpus = corpus::load_parallel(o.src_path, o.tgt_path, o.src_lang, o.tgt_lang);
  const auto result = corpus::deduplicate(corpus);
  corpus::write_corpus(result.corpus, o.out_dir, "dedup");
  const json payload = {{"input_pairs", corpus.size()},
                        {"removed", result.removed},
                        {"kept", result.corpus.size()},
                        {"out_dir", o.out_dir}};
  emit(out, o, payload,
       fmt::format("input pairs: {}\nremoved: {}\nkept: {}\nwritten to: {}\n", corpus.size(),
                   result.removed, result.corpus.size(), o.out_dir));
  log(o, "dedup", payload);
  return kOk;
}

int cmd_hpo(const Options& o, std::ostream& out) {
  const auto grid = o.grid_path.empty() ? hpo::default_search_space()
                                        : hpo::HyperparameterGrid::from_json(read_json_file(o.grid_path));
  const json overlay = o.template_path.empty() ? json::object() : read_json_file(o.template_path);
  const auto trials = hpo::enumerate_grid(grid);
  const std::size_t written = hpo::emit_configs(trials, o.out_dir, overlay);
  const json payload = {{"trials", trials.size()}, {"files_written", written},
                        {"out_dir", o.out_dir}, {"grid", grid.to_json()}};
  emit(out, o, payload,
       fmt::format("trials: {}\nfiles written: {}\nout dir: {}\n", trials.size(), written, o.out_dir));
  log(o, "hpo", payload);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Machine translation evaluation, human-evaluation scoring and corpus tooling",
               "loreseval"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--no-log", o.no_log, "Do not append to the run log");

  auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json_output, "Print machine-readable JSON instead of a table");
  };

  auto* evaluate = app.add_subcommand("evaluate", "Score hypotheses against references");
  evaluate->add_option("hypotheses", o.hyp_path, "Hypothesis file, one segment per line")->required();
  evaluate->add_option("references", o.ref_path, "Reference file, aligned by line")->required();
  evaluate->add_flag("--lowercase", o.lowercase, "Case-insensitive scoring");
  evaluate->add_option("--chrf-beta", o.chrf_beta, "ChrF recall weight")
      ->check(CLI::IsMember({1, 3}));
  evaluate->add_option("--metric-scale", o.metric_scale, "TER/ChrF/F1 scale")
      ->check(CLI::IsMember({"fraction", "percent"}));
  add_json(evaluate);

  auto* compare = app.add_subcommand("compare", "Rank systems and report relative improvement");
  compare->add_option("entries", o.entries_path, "JSON list of system entries")->required();
  compare->add_option("--baseline", o.baseline, "Baseline system (name or team/system)");
  compare->add_option("--sort", o.sort, "Sort metric")->check(CLI::IsMember({"bleu", "ter", "chrf"}));
  add_json(compare);

  auto* agree = app.add_subcommand("agree", "MQM/SQM scoring and inter-annotator agreement");
  agree->add_option("annotations", o.annotations_path, "Annotation bundle (JSONL)")->required();
  agree->add_option("--system", o.system, "System id")->required();
  agree->add_option("--direction", o.direction, "Translation direction, e.g. en2ga")->required();
  add_json(agree);

  auto* green_cmd = app.add_subcommand("green", "Energy and emissions estimate");
  green_cmd->add_option("--power-watts", o.power_watts, "GPU max power in watts");
  green_cmd->add_option("--utilization", o.utilization, "Assumed fraction of max power");
  green_cmd->add_option("--hours", o.hours, "Runtime in hours (repeatable)")->required();
  green_cmd->add_option("--system", o.run_names, "Run name per --hours value");
  green_cmd->add_option("--gpu", o.gpu, "GPU name for the report");
  auto* intensity = green_cmd->add_option("--intensity", o.intensity, "Grid intensity, kgCO2/kWh");
  auto* neutral = green_cmd->add_flag("--carbon-neutral", o.carbon_neutral,
                                      "Region is carbon neutral (intensity 0)");
  intensity->excludes(neutral);
  add_json(green_cmd);

  auto add_corpus_inputs = [&](CLI::App* sub) {
    sub->add_option("--src", o.src_path, "Source file")->required();
    sub->add_option("--tgt", o.tgt_path, "Target file")->required();
    sub->add_option("--src-lang", o.src_lang, "Source language code")->required();
    sub->add_option("--tgt-lang", o.tgt_lang, "Target language code")->required();
    sub->add_option("--out", o.out_dir, "Output directory")->required();
    add_json(sub);
  };
  auto* split = app.add_subcommand("split", "Dedup and split a parallel corpus");
  add_corpus_inputs(split);
  split->add_option("--ratio", o.ratio, "train,valid,test fractions");
  split->add_option("--seed", o.seed, "Shuffle with this seed before splitting");

  auto* dedup = app.add_subcommand("dedup", "Remove duplicate sentence pairs");
  add_corpus_inputs(dedup);

  auto* hpo_cmd = app.add_subcommand("hpo", "Enumerate a hyperparameter grid into configs");
  hpo_cmd->add_option("--grid", o.grid_path, "Grid JSON (default: built-in search space)");
  hpo_cmd->add_option("--out", o.out_dir, "Output directory")->required();
  hpo_cmd->add_option("--template", o.template_path, "Base config overlaid by trial values");
  add_json(hpo_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(o, out);
    if (*compare) return cmd_compare(o, out, err);
    if (*agree) return cmd_agree(o, out);
    if (*green_cmd) return cmd_green(o, out);
    if (*split) return cmd_split(o, out);
    if (*dedup) return cmd_dedup(o, out);
    if (*hpo_cmd) return cmd_hpo(o, out);
  } catch (const Error& e) {
    err << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace loreseval::cli
