#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("loreseval_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// Toy corpus: references over a small vocabulary, hypotheses derived from
// them by random swaps, substitutions, drops and insertions.
struct ToyCorpus {
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
};

inline std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline ToyCorpus toy_corpus(std::mt19937& rng, std::size_t max_pairs = 10,
                            std::size_t max_tokens = 8) {
  static const std::vector<std::string> vocab = {"an", "the", "cat", "sat", "mat", "scéim",
                                                 "pá", "covid", "dog", "ran", "of", "is"};
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  ToyCorpus c;
  const std::size_t pairs = pick(1, max_pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::vector<std::string> ref(pick(1, max_tokens));
    for (auto& w : ref) w = vocab[pick(0, vocab.size() - 1)];
    std::vector<std::string> hyp = ref;
    const std::size_t edits = pick(0, 3);
    for (std::size_t e = 0; e < edits; ++e) {
      switch (pick(0, 3)) {
        case 0:
          if (hyp.size() > 1) std::swap(hyp[pick(0, hyp.size() - 1)], hyp[pick(0, hyp.size() - 1)]);
          break;
        case 1:
          hyp[pick(0, hyp.size() - 1)] = vocab[pick(0, vocab.size() - 1)];
          break;
        case 2:
          if (hyp.size() > 1) hyp.erase(hyp.begin() + static_cast<std::ptrdiff_t>(pick(0, hyp.size() - 1)));
          break;
        default:
          if (hyp.size() < max_tokens) {
            hyp.insert(hyp.begin() + static_cast<std::ptrdiff_t>(pick(0, hyp.size())),
                       vocab[pick(0, vocab.size() - 1)]);
          }
      }
    }
    c.refs.push_back(join(ref));
    c.hyps.push_back(join(hyp));
  }
  return c;
}

}  // namespace testing_support
