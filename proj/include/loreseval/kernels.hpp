#pragma once

// Per-segment sufficient statistics for the corpus metrics, and the two
// collection paths over a corpus: a plain serial loop kept as the reference,
// and an OpenMP loop. Pooling is integer addition in index order so both
// paths agree bit for bit.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "loreseval/metrics.hpp"

namespace loreseval::metrics {

struct NgramCounts {
  std::array<std::uint64_t, kMaxBleuOrder> matches{};
  std::array<std::uint64_t, kMaxBleuOrder> totals{};
  std::uint64_t hyp_length = 0;
  std::uint64_t ref_length = 0;

  NgramCounts& operator+=(const NgramCounts& other);
  friend bool operator==(const NgramCounts&, const NgramCounts&) = default;
};

struct EditCounts {
  std::uint64_t edits = 0;
  std::uint64_t ref_length = 0;

  EditCounts& operator+=(const EditCounts& other);
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

struct CharCounts {
  std::vector<std::uint64_t> matches;  // one entry per order 1..N
  std::vector<std::uint64_t> hyp;
  std::vector<std::uint64_t> ref;

  explicit CharCounts(int order = 0);
  CharCounts& operator+=(const CharCounts& other);
  friend bool operator==(const CharCounts&, const CharCounts&) = default;
};

struct SegmentStats {
  NgramCounts bleu;
  EditCounts ter;
  CharCounts chrf;
  double f1 = 0.0;
};

struct CorpusStats {
  NgramCounts bleu;
  EditCounts ter;
  CharCounts chrf;
  std::vector<double> f1;  // per segment, index order
};

NgramCounts ngram_counts(const std::vector<std::string>& hypothesis,
                         const std::vector<std::string>& reference, int max_order);
CharCounts char_counts(std::string_view hypothesis, std::string_view reference,
                       const ChrfConfig& config);
EditCounts edit_counts(std::string_view hypothesis, std::string_view reference,
                       const TokenizerConfig& tokenizer);

double bleu_from_counts(const NgramCounts& counts, int max_order, Smoothing smoothing);
double chrf_from_counts(const CharCounts& counts, double beta);
double ter_from_counts(const EditCounts& counts);

SegmentStats segment_stats(std::string_view hypothesis, std::string_view reference,
                           const EvaluateConfigs& configs);

CorpusStats collect_serial(const std::vector<std::string>& hypotheses,
                           const std::vector<std::string>& references,
                           const EvaluateConfigs& configs);
CorpusStats collect_parallel(const std::vector<std::string>& hypotheses,
                             const std::vector<std::string>& references,
                             const EvaluateConfigs& configs);

MetricReport report_from_stats(const CorpusStats& stats, const EvaluateConfigs& configs);

}  // namespace loreseval::metrics
