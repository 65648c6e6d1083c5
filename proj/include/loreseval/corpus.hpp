#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace loreseval::corpus {

struct Segment {
  std::size_t index = 0;  // 0-based line number
  std::string text;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ParallelCorpus {
  std::vector<Segment> source;
  std::vector<Segment> target;
  std::string source_lang;
  std::string target_lang;

  std::size_t size() const noexcept { return source.size(); }
  bool empty() const noexcept { return source.empty(); }

  friend bool operator==(const ParallelCorpus&, const ParallelCorpus&) = default;
};

// Builds a corpus from in-memory lines, validating the same invariants as
// load_parallel (aligned counts, UTF-8, no blank or multi-line segments).
ParallelCorpus make_corpus(const std::vector<std::string>& source,
                           const std::vector<std::string>& target,
                           std::string source_lang, std::string target_lang);

// One segment per line per side. LF and CRLF endings are accepted and a
// leading BOM is dropped.
ParallelCorpus load_parallel(const std::filesystem::path& source_path,
                             const std::filesystem::path& target_path,
                             std::string source_lang, std::string target_lang);

struct DedupResult {
  ParallelCorpus corpus;
  std::size_t removed = 0;
};

// Pair-level dedup keyed on (source, target) with trailing whitespace
// trimmed. First occurrence wins; relative order and original indices are
// kept.
DedupResult deduplicate(const ParallelCorpus& corpus);

class SplitRatio {
 public:
  // Throws Error{RatioInvalid} unless train in (0,1), the others in [0,1)
  // and the three sum to 1 within 1e-9.
  SplitRatio(double train, double validation, double test);

  // Parses "0.8,0.1,0.1" or "0.8/0.1/0.1".
  static SplitRatio parse(const std::string& text);

  double train() const noexcept { return train_; }
  double validation() const noexcept { return validation_; }
  double test() const noexcept { return test_; }

 private:
  double train_;
  double validation_;
  double test_;
};

struct SplitCorpus {
  ParallelCorpus train;
  ParallelCorpus validation;
  ParallelCorpus test;
  std::size_t duplicates_removed = 0;    // by the pre-split dedup pass
  std::size_t cross_split_dropped = 0;   // train pairs also present in valid/test
};

// Dedups, optionally shuffles with a seeded Fisher-Yates permutation, then
// slices validation = floor(N*v), test = floor(N*t), train = remainder.
// Order of slices in the permuted sequence: train, validation, test.
SplitCorpus split(const ParallelCorpus& corpus, const SplitRatio& ratio,
                  std::optional<std::uint64_t> seed = std::nullopt);

// Deterministic permutation of [0, n) for a given seed; independent of the
// standard library's distribution implementations.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

enum class Side { Source, Target, Both };

ParallelCorpus normalize_case(const ParallelCorpus& corpus, Side side);

// Writes {stem}.{source_lang} and {stem}.{target_lang} with LF endings.
void write_corpus(const ParallelCorpus& corpus, const std::filesystem::path& dir,
                  const std::string& stem);

// Writes the six {train,valid,test}.{lang} files.
void write_splits(const SplitCorpus& splits, const std::filesystem::path& dir);

std::vector<std::string> texts(const std::vector<Segment>& segments);

}  // namespace loreseval::corpus
