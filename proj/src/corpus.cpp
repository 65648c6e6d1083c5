#include "loreseval/corpus.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "loreseval/error.hpp"
#include "loreseval/utf8.hpp"

namespace loreseval::corpus {

namespace {

constexpr double kRatioTolerance = 1e-9;

bool is_blank(std::string_view text) {
  for (char32_t cp : utf8::decode(text)) {
    if (!utf8::is_space(cp)) return false;
  }
  return true;
}

std::string_view trim_trailing(std::string_view text) {
  while (!text.empty()) {
    const char c = text.back();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      text.remove_suffix(1);
    } else {
      break;
    }
  }
  return text;
}

std::vector<Segment> to_segments(const std::vector<std::string>& lines,
                                 const std::string& label) {
  std::vector<Segment> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& text = lines[i];
    if (const auto bad = utf8::find_invalid(text)) {
      throw Error(ErrorCode::EncodingError,
                  label + ": malformed UTF-8 at byte " + std::to_string(*bad), i + 1);
    }
    if (text.find('\n') != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, label + ": segment contains a newline",
                  i + 1);
    }
    if (is_blank(text)) {
      throw Error(ErrorCode::BlankLine, label + ": empty or whitespace-only segment",
                  i + 1);
    }
    out.push_back(Segment{i, text});
  }
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + path.string());
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) {
    lines.front().erase(0, 3);
  }
  if (lines.empty()) throw Error(ErrorCode::EmptyFile, path.string() + " has no lines");
  return lines;
}

ParallelCorpus with_segments(const ParallelCorpus& like, std::vector<Segment> source,
                             std::vector<Segment> target) {
  return ParallelCorpus{std::move(source), std::move(target), like.source_lang,
                        like.target_lang};
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

std::size_t floor_share(std::size_t n, double fraction) {
  // The epsilon absorbs products like 100 * 0.29 = 28.999999999999996.
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction + 1e-9));
}

void write_lines(const std::filesystem::path& path, const std::vector<Segment>& segments) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (const Segment& s : segments) out << s.text << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace

ParallelCorpus make_corpus(const std::vector<std::string>& source,
                           const std::vector<std::string>& target,
                           std::string source_lang, std::string target_lang) {
  if (source_lang.empty() || target_lang.empty()) {
    throw Error(ErrorCode::InvalidArgument, "language codes must be non-empty");
  }
  if (source.size() != target.size()) {
    throw Error(ErrorCode::LineCountMismatch,
                "source has " + std::to_string(source.size()) + " lines, target has " +
                    std::to_string(target.size()));
  }
  return ParallelCorpus{to_segments(source, "source"), to_segments(target, "target"),
                        std::move(source_lang), std::move(target_lang)};
}

ParallelCorpus load_parallel(const std::filesystem::path& source_path,
                             const std::filesystem::path& target_path,
                             std::string source_lang, std::string target_lang) {
  return make_corpus(read_lines(source_path), read_lines(target_path),
                     std::move(source_lang), std::move(target_lang));
}

DedupResult deduplicate(const ParallelCorpus& corpus) {
  std::set<std::pair<std::string_view, std::string_view>> seen;
  std::vector<Segment> source;
  std::vector<Segment> target;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto key = std::make_pair(trim_trailing(corpus.source[i].text),
                              trim_trailing(corpus.target[i].text));
    if (seen.insert(key).second) {
      source.push_back(corpus.source[i]);
      target.push_back(corpus.target[i]);
    }
  }
  const std::size_t removed = corpus.size() - source.size();
  return {with_segments(corpus, std::move(source), std::move(target)), removed};
}

SplitRatio::SplitRatio(double train, double validation, double test)
    : train_(train), validation_(validation), test_(test) {
  const bool ranges_ok = train > 0.0 && train < 1.0 && validation >= 0.0 &&
                         validation < 1.0 && test >= 0.0 && test < 1.0;
  if (!ranges_ok || std::abs(train + validation + test - 1.0) > kRatioTolerance) {
    std::ostringstream msg;
    msg << "split ratio " << train << '/' << validation << '/' << test
        << " must have train in (0,1), others in [0,1), summing to 1";
    throw Error(ErrorCode::RatioInvalid, msg.str());
  }
}

SplitRatio SplitRatio::parse(const std::string& text) {
  std::vector<double> parts;
  std::string item;
  std::istringstream in(text);
  const char sep = text.find('/') != std::string::npos ? '/' : ',';
  while (std::getline(in, item, sep)) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::RatioInvalid, "cannot parse ratio component '" + item + "'");
    }
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::RatioInvalid, "ratio needs three components: " + text);
  }
  return SplitRatio(parts[0], parts[1], parts[2]);
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

SplitCorpus split(const ParallelCorpus& corpus, const SplitRatio& ratio,
                  std::optional<std::uint64_t> seed) {
  DedupResult dedup = deduplicate(corpus);
  const ParallelCorpus& unique = dedup.corpus;
  const std::size_t n = unique.size();

  const std::size_t parts_needed = 1 + (ratio.validation() > 0.0 ? 1 : 0) +
                                   (ratio.test() > 0.0 ? 1 : 0);
  if (n < parts_needed) {
    throw Error(ErrorCode::CorpusTooSmall, "corpus has " + std::to_string(n) +
                                               " unique pairs, need at least " +
                                               std::to_string(parts_needed));
  }

  std::vector<std::size_t> order;
  if (seed) {
    order = seeded_permutation(n, *seed);
  } else {
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
  }

  const std::size_t n_valid = floor_share(n, ratio.validation());
  const std::size_t n_test = floor_share(n, ratio.test());
  const std::size_t n_train = n - n_valid - n_test;

  auto slice = [&](std::size_t begin, std::size_t count) {
    std::vector<Segment> src;
    std::vector<Segment> tgt;
    src.reserve(count);
    tgt.reserve(count);
    for (std::size_t k = begin; k < begin + count; ++k) {
      src.push_back(unique.source[order[k]]);
      tgt.push_back(unique.target[order[k]]);
    }
    return with_segments(unique, std::move(src), std::move(tgt));
  };

  SplitCorpus out;
  out.train = slice(0, n_train);
  out.validation = slice(n_train, n_valid);
  out.test = slice(n_train + n_valid, n_test);
  out.duplicates_removed = dedup.removed;

  // Held-out pairs take precedence over train.
  std::set<std::pair<std::string_view, std::string_view>> held_out;
  for (const ParallelCorpus* part : {&out.validation, &out.test}) {
    for (std::size_t i = 0; i < part->size(); ++i) {
      held_out.emplace(trim_trailing(part->source[i].text),
                       trim_trailing(part->target[i].text));
    }
  }
  std::vector<Segment> src;
  std::vector<Segment> tgt;
  for (std::size_t i = 0; i < out.train.size(); ++i) {
    if (held_out.contains({trim_trailing(out.train.source[i].text),
                           trim_trailing(out.train.target[i].text)})) {
      ++out.cross_split_dropped;
      continue;
    }
    src.push_back(out.train.source[i]);
    tgt.push_back(out.train.target[i]);
  }
  out.train = with_segments(unique, std::move(src), std::move(tgt));
  return out;
}

ParallelCorpus normalize_case(const ParallelCorpus& corpus, Side side) {
  ParallelCorpus out = corpus;
  if (side == Side::Source || side == Side::Both) {
    for (Segment& s : out.source) s.text = utf8::lowercase(s.text);
  }
  if (side == Side::Target || side == Side::Both) {
    for (Segment& s : out.target) s.text = utf8::lowercase(s.text);
  }
  return out;
}

void write_corpus(const ParallelCorpus& corpus, const std::filesystem::path& dir,
                  const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
  write_lines(dir / (stem + "." + corpus.source_lang), corpus.source);
  write_lines(dir / (stem + "." + corpus.target_lang), corpus.target);
}

void write_splits(const SplitCorpus& splits, const std::filesystem::path& dir) {
  write_corpus(splits.train, dir, "train");
  write_corpus(splits.validation, dir, "valid");
  write_corpus(splits.test, dir, "test");
}

std::vector<std::string> texts(const std::vector<Segment>& segments) {
  std::vector<std::string> out;
  out.reserve(segments.size());
  for (const Segment& s : segments) out.push_back(s.text);
  return out;
}

}  // namespace loreseval::corpus
