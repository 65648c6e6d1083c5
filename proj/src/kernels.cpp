#include "loreseval/kernels.hpp"

#include <cstddef>
#include <exception>
#include <numeric>

#include "loreseval/error.hpp"

namespace loreseval::metrics {

namespace {

void require_aligned(const std::vector<std::string>& hypotheses,
                     const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(hypotheses.size()) + " hypotheses vs " +
                    std::to_string(references.size()) + " references");
  }
  if (hypotheses.empty()) throw Error(ErrorCode::EmptyInput, "no segments to score");
}

CorpusStats pool(const std::vector<SegmentStats>& segments, int char_order) {
  CorpusStats out;
  out.chrf = CharCounts(char_order);
  out.f1.reserve(segments.size());
  for (const SegmentStats& s : segments) {
    out.bleu += s.bleu;
    out.ter += s.ter;
    out.chrf += s.chrf;
    out.f1.push_back(s.f1);
  }
  return out;
}

}  // namespace

SegmentStats segment_stats(std::string_view hypothesis, std::string_view reference,
                           const EvaluateConfigs& configs) {
  SegmentStats s;
  const auto bleu_tok = configs.bleu.tokenizer();
  s.bleu = ngram_counts(tokenize(hypothesis, bleu_tok), tokenize(reference, bleu_tok),
                        configs.bleu.max_order);
  s.ter = edit_counts(hypothesis, reference, configs.ter);
  s.chrf = char_counts(hypothesis, reference, configs.chrf);
  s.f1 = (hypothesis.empty() || reference.empty())
             ? 0.0
             : unigram_f1(hypothesis, reference, configs.f1);
  return s;
}

CorpusStats collect_serial(const std::vector<std::string>& hypotheses,
                           const std::vector<std::string>& references,
                           const EvaluateConfigs& configs) {
  require_aligned(hypotheses, references);
  std::vector<SegmentStats> segments;
  segments.reserve(hypotheses.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    segments.push_back(segment_stats(hypotheses[i], references[i], configs));
  }
  return pool(segments, configs.chrf.char_order);
}

CorpusStats collect_parallel(const std::vector<std::string>& hypotheses,
                             const std::vector<std::string>& references,
                             const EvaluateConfigs& configs) {
  require_aligned(hypotheses, references);
  const auto n = static_cast<std::ptrdiff_t>(hypotheses.size());
  std::vector<SegmentStats> segments(hypotheses.size());
  // Exceptions may not cross the parallel region; keep the lowest-index one.
  std::vector<std::exception_ptr> failures(hypotheses.size());

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      segments[k] = segment_stats(hypotheses[k], references[k], configs);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return pool(segments, configs.chrf.char_order);
}

MetricReport report_from_stats(const CorpusStats& stats, const EvaluateConfigs& configs) {
  MetricReport report;
  report.n_segments = stats.f1.size();
  report.bleu = bleu_from_counts(stats.bleu, configs.bleu.max_order, Smoothing::None);
  report.ter = ter_from_counts(stats.ter);
  report.chrf = chrf_from_counts(stats.chrf, configs.chrf.beta);
  const double f1_sum = std::accumulate(stats.f1.begin(), stats.f1.end(), 0.0);
  report.f1 = stats.f1.empty() ? 0.0 : f1_sum / static_cast<double>(stats.f1.size());
  report.configs = configs;
  return report;
}

MetricReport evaluate_all(const std::vector<std::string>& hypotheses,
                          const std::vector<std::string>& references,
                          const EvaluateConfigs& configs, Execution execution) {
  configs.bleu.validate();
  configs.chrf.validate();
  const CorpusStats stats = execution == Execution::Serial
                                ? collect_serial(hypotheses, references, configs)
                                : collect_parallel(hypotheses, references, configs);
  return report_from_stats(stats, configs);
}

}  // namespace loreseval::metrics
