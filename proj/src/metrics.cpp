#include "loreseval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "loreseval/error.hpp"
#include "loreseval/kernels.hpp"
#include "loreseval/utf8.hpp"

namespace loreseval::metrics {

namespace {

void require_text(std::string_view hypothesis, std::string_view reference,
                  const char* metric) {
  if (hypothesis.empty() || reference.empty()) {
    throw Error(ErrorCode::EmptyInput, std::string(metric) + ": empty segment");
  }
}

void require_aligned(const std::vector<std::string>& hypotheses,
                     const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(hypotheses.size()) + " hypotheses vs " +
                    std::to_string(references.size()) + " references");
  }
  if (hypotheses.empty()) throw Error(ErrorCode::EmptyInput, "no segments to score");
}

using GramTable = std::unordered_map<std::string, std::uint64_t>;

// Tokens never contain whitespace, so '\x01' cannot collide with token text.
GramTable count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  GramTable table;
  if (tokens.size() < n) return table;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x01';
      key += tokens[i + k];
    }
    ++table[key];
  }
  return table;
}

template <typename Table>
std::uint64_t clipped_matches(const Table& hyp, const Table& ref) {
  std::uint64_t matches = 0;
  for (const auto& [gram, count] : hyp) {
    if (auto it = ref.find(gram); it != ref.end()) matches += std::min(count, it->second);
  }
  return matches;
}

std::u32string chrf_chars(std::string_view text, const ChrfConfig& config) {
  std::u32string chars = utf8::decode(text);
  if (config.lowercase) {
    for (char32_t& cp : chars) cp = utf8::to_lower(cp);
  }
  if (config.strip_whitespace) std::erase_if(chars, utf8::is_space);
  return chars;
}

std::unordered_map<std::u32string, std::uint64_t> count_char_ngrams(
    const std::u32string& chars, std::size_t n) {
  std::unordered_map<std::u32string, std::uint64_t> table;
  for (std::size_t i = 0; i + n <= chars.size(); ++i) ++table[chars.substr(i, n)];
  return table;
}

}  // namespace

std::string_view to_string(Smoothing smoothing) {
  return smoothing == Smoothing::None ? "none" : "add-one-on-zero";
}

void BleuConfig::validate() const {
  if (max_order < 1 || max_order > kMaxBleuOrder) {
    throw Error(ErrorCode::InvalidConfig,
                "BLEU max_order must be in [1, 9], got " + std::to_string(max_order));
  }
}

void ChrfConfig::validate() const {
  if (char_order < 1) throw Error(ErrorCode::InvalidConfig, "ChrF char_order must be >= 1");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidConfig, "ChrF beta must be > 0");
}

EvaluateConfigs EvaluateConfigs::with_lowercase(bool lowercase, double chrf_beta) {
  EvaluateConfigs configs;
  configs.bleu.lowercase = lowercase;
  configs.ter.lowercase = lowercase;
  configs.chrf.lowercase = lowercase;
  configs.chrf.beta = chrf_beta;
  configs.f1.lowercase = lowercase;
  return configs;
}

// --- statistics -----------------------------------------------------------

NgramCounts& NgramCounts::operator+=(const NgramCounts& other) {
  for (std::size_t n = 0; n < matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

EditCounts& EditCounts::operator+=(const EditCounts& other) {
  edits += other.edits;
  ref_length += other.ref_length;
  return *this;
}

CharCounts::CharCounts(int order)
    : matches(static_cast<std::size_t>(order)),
      hyp(static_cast<std::size_t>(order)),
      ref(static_cast<std::size_t>(order)) {}

CharCounts& CharCounts::operator+=(const CharCounts& other) {
  if (matches.empty()) {
    *this = other;
    return *this;
  }
  for (std::size_t n = 0; n < matches.size(); ++n) {
    matches[n] += other.matches[n];
    hyp[n] += other.hyp[n];
    ref[n] += other.ref[n];
  }
  return *this;
}

NgramCounts ngram_counts(const std::vector<std::string>& hypothesis,
                         const std::vector<std::string>& reference, int max_order) {
  NgramCounts counts;
  counts.hyp_length = hypothesis.size();
  counts.ref_length = reference.size();
  for (int n = 1; n <= max_order; ++n) {
    const auto size = static_cast<std::size_t>(n);
    const GramTable hyp = count_ngrams(hypothesis, size);
    const GramTable ref = count_ngrams(reference, size);
    counts.matches[n - 1] = clipped_matches(hyp, ref);
    counts.totals[n - 1] = hypothesis.size() >= size ? hypothesis.size() - size + 1 : 0;
  }
  return counts;
}

double bleu_from_counts(const NgramCounts& counts, int max_order, Smoothing smoothing) {
  if (counts.hyp_length == 0) return 0.0;
  // Orders the hypotheses are too short to contain are left out of the mean.
  double log_precision = 0.0;
  int used = 0;
  for (int n = 0; n < max_order; ++n) {
    if (counts.totals[n] == 0) break;
    ++used;
    double matches = static_cast<double>(counts.matches[n]);
    double total = static_cast<double>(counts.totals[n]);
    if (counts.matches[n] == 0) {
      if (smoothing == Smoothing::None) return 0.0;
      matches += 1.0;
      total += 1.0;
    }
    log_precision += std::log(matches / total);
  }
  const double h = static_cast<double>(counts.hyp_length);
  const double r = static_cast<double>(counts.ref_length);
  const double brevity = h < r ? std::exp(1.0 - r / h) : 1.0;
  return 100.0 * brevity * std::exp(log_precision / used);
}

CharCounts char_counts(std::string_view hypothesis, std::string_view reference,
                       const ChrfConfig& config) {
  const std::u32string hyp = chrf_chars(hypothesis, config);
  const std::u32string ref = chrf_chars(reference, config);
  CharCounts counts(config.char_order);
  for (int n = 1; n <= config.char_order; ++n) {
    const auto size = static_cast<std::size_t>(n);
    const auto hyp_grams = count_char_ngrams(hyp, size);
    const auto ref_grams = count_char_ngrams(ref, size);
    counts.matches[n - 1] = clipped_matches(hyp_grams, ref_grams);
    counts.hyp[n - 1] = hyp.size() >= size ? hyp.size() - size + 1 : 0;
    counts.ref[n - 1] = ref.size() >= size ? ref.size() - size + 1 : 0;
  }
  return counts;
}

// Precision is averaged over the orders the hypothesis has n-grams for and
// recall over the orders the reference has n-grams for, so short segments
// are not penalised for orders longer than themselves.
double chrf_from_counts(const CharCounts& counts, double beta) {
  double precision = 0.0;
  double recall = 0.0;
  int precision_orders = 0;
  int recall_orders = 0;
  for (std::size_t n = 0; n < counts.matches.size(); ++n) {
    const auto m = static_cast<double>(counts.matches[n]);
    if (counts.hyp[n] > 0) {
      precision += m / static_cast<double>(counts.hyp[n]);
      ++precision_orders;
    }
    if (counts.ref[n] > 0) {
      recall += m / static_cast<double>(counts.ref[n]);
      ++recall_orders;
    }
  }
  if (precision_orders > 0) precision /= precision_orders;
  if (recall_orders > 0) recall /= recall_orders;
  const double beta2 = beta * beta;
  const double denom = beta2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + beta2) * precision * recall / denom;
}

double ter_from_counts(const EditCounts& counts) {
  if (counts.ref_length == 0) {
    throw Error(ErrorCode::EmptyReference, "TER needs at least one reference token");
  }
  return static_cast<double>(counts.edits) / static_cast<double>(counts.ref_length);
}

EditCounts edit_counts(std::string_view hypothesis, std::string_view reference,
                       const TokenizerConfig& tokenizer) {
  const auto hyp = tokenize(hypothesis, tokenizer);
  const auto ref = tokenize(reference, tokenizer);
  return {ter_edits(hyp, ref).edits, ref.size()};
}

// --- sentence scores ------------------------------------------------------

double bleu_sentence(std::string_view hypothesis, std::string_view reference,
                     const BleuConfig& config) {
  config.validate();
  require_text(hypothesis, reference, "BLEU");
  const auto tok = config.tokenizer();
  return bleu_from_counts(
      ngram_counts(tokenize(hypothesis, tok), tokenize(reference, tok), config.max_order),
      config.max_order, config.smoothing);
}

double bleu_corpus(const std::vector<std::string>& hypotheses,
                   const std::vector<std::string>& references, const BleuConfig& config) {
  config.validate();
  require_aligned(hypotheses, references);
  const auto tok = config.tokenizer();
  NgramCounts pooled;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    pooled += ngram_counts(tokenize(hypotheses[i], tok), tokenize(references[i], tok),
                           config.max_order);
  }
  return bleu_from_counts(pooled, config.max_order, Smoothing::None);
}

double ter(std::string_view hypothesis, std::string_view reference,
           const TokenizerConfig& tokenizer) {
  return ter_from_counts(edit_counts(hypothesis, reference, tokenizer));
}

double chrf(std::string_view hypothesis, std::string_view reference,
            const ChrfConfig& config) {
  config.validate();
  require_text(hypothesis, reference, "ChrF");
  return chrf_from_counts(char_counts(hypothesis, reference, config), config.beta);
}

double unigram_f1(std::string_view hypothesis, std::string_view reference,
                  const TokenizerConfig& tokenizer) {
  require_text(hypothesis, reference, "F1");
  const auto hyp = tokenize(hypothesis, tokenizer);
  const auto ref = tokenize(reference, tokenizer);
  if (hyp.empty() || ref.empty()) return 0.0;
  const auto matches =
      static_cast<double>(clipped_matches(count_ngrams(hyp, 1), count_ngrams(ref, 1)));
  if (matches == 0.0) return 0.0;
  const double precision = matches / static_cast<double>(hyp.size());
  const double recall = matches / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

double relative_improvement(double new_score, double baseline) {
  if (!(baseline > 0.0)) {
    throw Error(ErrorCode::ZeroBaseline, "baseline score must be positive");
  }
  return 100.0 * (new_score - baseline) / baseline;
}

}  // namespace loreseval::metrics
