#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "loreseval/tokenizer.hpp"

namespace loreseval::metrics {

enum class Smoothing {
  None,
  // Add one to numerator and denominator of every order with zero matches.
  AddOneOnZero,
};

std::string_view to_string(Smoothing smoothing);

struct BleuConfig {
  int max_order = 4;
  Smoothing smoothing = Smoothing::None;
  bool lowercase = false;
  TokenScheme scheme = TokenScheme::SplitPunctuation;

  void validate() const;  // 1 <= max_order <= 9
  TokenizerConfig tokenizer() const { return {scheme, lowercase}; }

  friend bool operator==(const BleuConfig&, const BleuConfig&) = default;
};

struct ChrfConfig {
  int char_order = 6;
  double beta = 3.0;
  bool strip_whitespace = true;
  bool lowercase = false;

  void validate() const;  // char_order >= 1, beta > 0

  friend bool operator==(const ChrfConfig&, const ChrfConfig&) = default;
};

inline constexpr int kMaxBleuOrder = 9;

// Sentence-level scores. Strings are single segments.
double bleu_sentence(std::string_view hypothesis, std::string_view reference,
                     const BleuConfig& config = {});
double ter(std::string_view hypothesis, std::string_view reference,
           const TokenizerConfig& tokenizer = {});
double chrf(std::string_view hypothesis, std::string_view reference,
            const ChrfConfig& config = {});
double unigram_f1(std::string_view hypothesis, std::string_view reference,
                  const TokenizerConfig& tokenizer = {});

// Unsmoothed corpus BLEU over pooled statistics, 0..100.
double bleu_corpus(const std::vector<std::string>& hypotheses,
                   const std::vector<std::string>& references,
                   const BleuConfig& config = {});

// 100 * (new - baseline) / baseline. Throws Error{ZeroBaseline} unless
// baseline > 0.
double relative_improvement(double new_score, double baseline);

// Greedy-shift TER edit count on token sequences. Shifts and Levenshtein
// edits cost 1 each; see ter.cpp for the search contract.
struct TerAlignment {
  std::size_t shifts = 0;
  std::size_t edits = 0;  // shifts + final edit distance
  std::vector<std::string> shifted_hypothesis;
};

TerAlignment ter_edits(const std::vector<std::string>& hypothesis,
                       const std::vector<std::string>& reference);

inline constexpr std::size_t kTerMaxShiftSpan = 10;
inline constexpr std::size_t kTerMaxShifts = 50;

std::size_t levenshtein(const std::vector<std::string>& a,
                        const std::vector<std::string>& b);

struct EvaluateConfigs {
  BleuConfig bleu;
  TokenizerConfig ter;
  ChrfConfig chrf;
  TokenizerConfig f1;

  // Applies the same case folding to every metric.
  static EvaluateConfigs with_lowercase(bool lowercase, double chrf_beta = 3.0);
};

struct MetricReport {
  double bleu = 0.0;  // 0..100
  double ter = 0.0;   // fraction scale
  double chrf = 0.0;  // 0..1
  double f1 = 0.0;    // 0..1
  std::size_t n_segments = 0;
  EvaluateConfigs configs;
};

enum class Execution { Serial, Parallel };

// Corpus BLEU, corpus TER (total edits / total reference tokens), pooled
// corpus ChrF and the mean of sentence F1. Serial and Parallel give
// bit-identical results.
MetricReport evaluate_all(const std::vector<std::string>& hypotheses,
                          const std::vector<std::string>& references,
                          const EvaluateConfigs& configs = {},
                          Execution execution = Execution::Parallel);

}  // namespace loreseval::metrics
