#pragma once

// Brute-force reference computations used only by tests. They work on
// space-separated ASCII/UTF-8 toy data and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> split_spaces(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <typename T>
std::size_t count_occurrences(const std::vector<T>& seq, const std::vector<T>& gram) {
  std::size_t count = 0;
  if (gram.size() > seq.size()) return 0;
  for (std::size_t i = 0; i + gram.size() <= seq.size(); ++i) {
    if (std::equal(gram.begin(), gram.end(), seq.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

// Clipped matches and total n-grams of order n, by linear rescans.
template <typename T>
std::pair<std::size_t, std::size_t> clipped(const std::vector<T>& hyp, const std::vector<T>& ref,
                                            std::size_t n) {
  std::vector<std::vector<T>> seen;
  std::size_t matches = 0;
  std::size_t total = hyp.size() >= n ? hyp.size() - n + 1 : 0;
  for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
    std::vector<T> gram(hyp.begin() + static_cast<std::ptrdiff_t>(i),
                        hyp.begin() + static_cast<std::ptrdiff_t>(i + n));
    if (std::find(seen.begin(), seen.end(), gram) != seen.end()) continue;
    seen.push_back(gram);
    matches += std::min(count_occurrences(hyp, gram), count_occurrences(ref, gram));
  }
  return {matches, total};
}

// Unsmoothed corpus BLEU from pooled counts, product form.
inline double corpus_bleu(const std::vector<std::string>& hyps,
                          const std::vector<std::string>& refs, int max_order = 4) {
  std::vector<double> m(static_cast<std::size_t>(max_order)), t(static_cast<std::size_t>(max_order));
  double h = 0, r = 0;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    const auto hyp = split_spaces(hyps[k]);
    const auto ref = split_spaces(refs[k]);
    h += static_cast<double>(hyp.size());
    r += static_cast<double>(ref.size());
    for (int n = 1; n <= max_order; ++n) {
      const auto [mm, tt] = clipped(hyp, ref, static_cast<std::size_t>(n));
      m[static_cast<std::size_t>(n - 1)] += static_cast<double>(mm);
      t[static_cast<std::size_t>(n - 1)] += static_cast<double>(tt);
    }
  }
  if (h == 0) return 0.0;
  double product = 1.0;
  int used = 0;
  for (std::size_t n = 0; n < m.size(); ++n) {
    if (t[n] == 0) continue;
    if (m[n] == 0) return 0.0;
    product *= m[n] / t[n];
    ++used;
  }
  const double bp = h < r ? std::exp(1.0 - r / h) : 1.0;
  return 100.0 * bp * std::pow(product, 1.0 / used);
}

inline std::u32string naive_decode(const std::string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

// Pooled ChrF with whitespace stripped (spaces only in toy data).
inline double corpus_chrf(const std::vector<std::string>& hyps,
                          const std::vector<std::string>& refs, int order, double beta) {
  std::vector<double> m(static_cast<std::size_t>(order)), hc(m.size()), rc(m.size());
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    std::u32string h = naive_decode(hyps[k]);
    std::u32string r = naive_decode(refs[k]);
    std::erase(h, U' ');
    std::erase(r, U' ');
    const std::vector<char32_t> hv(h.begin(), h.end()), rv(r.begin(), r.end());
    for (int n = 1; n <= order; ++n) {
      const auto [mm, tt] = clipped(hv, rv, static_cast<std::size_t>(n));
      m[static_cast<std::size_t>(n - 1)] += static_cast<double>(mm);
      hc[static_cast<std::size_t>(n - 1)] += static_cast<double>(tt);
      rc[static_cast<std::size_t>(n - 1)] +=
          static_cast<double>(rv.size() >= static_cast<std::size_t>(n) ? rv.size() - static_cast<std::size_t>(n) + 1 : 0);
    }
  }
  double p = 0, r = 0;
  int pn = 0, rn = 0;
  for (std::size_t n = 0; n < m.size(); ++n) {
    if (hc[n] > 0) p += m[n] / hc[n], ++pn;
    if (rc[n] > 0) r += m[n] / rc[n], ++rn;
  }
  if (pn) p /= pn;
  if (rn) r /= rn;
  const double b2 = beta * beta;
  if (b2 * p + r == 0) return 0.0;
  return (1 + b2) * p * r / (b2 * p + r);
}

inline std::size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// Exhaustive greedy shift search: every span of 1..10 tokens moved to every
// other position, full DP per candidate.
inline std::size_t ter_edits(std::vector<std::string> hyp, const std::vector<std::string>& ref) {
  std::size_t d = levenshtein(hyp, ref);
  std::size_t shifts = 0;
  while (shifts < 50) {
    std::size_t best = d;
    std::vector<std::string> best_seq;
    bool found = false;
    const std::size_t n = hyp.size();
    for (std::size_t start = 0; start < n; ++start) {
      for (std::size_t len = 1; len <= 10 && start + len <= n; ++len) {
        std::vector<std::string> span(hyp.begin() + static_cast<std::ptrdiff_t>(start),
                                      hyp.begin() + static_cast<std::ptrdiff_t>(start + len));
        std::vector<std::string> rest = hyp;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(start),
                   rest.begin() + static_cast<std::ptrdiff_t>(start + len));
        for (std::size_t dest = 0; dest <= rest.size(); ++dest) {
          if (dest == start) continue;
          std::vector<std::string> cand = rest;
          cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(dest), span.begin(), span.end());
          const std::size_t dc = levenshtein(cand, ref);
          if (dc < best) {
            best = dc;
            best_seq = cand;
            found = true;
          }
        }
      }
    }
    if (!found || best + 1 >= d) break;
    hyp = best_seq;
    d = best;
    ++shifts;
  }
  return shifts + d;
}

inline double corpus_ter(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  std::size_t edits = 0, words = 0;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    const auto ref = split_spaces(refs[k]);
    edits += ter_edits(split_spaces(hyps[k]), ref);
    words += ref.size();
  }
  return static_cast<double>(edits) / static_cast<double>(words);
}

struct KappaOracle {
  double p_o, p_e, kappa;
  bool degenerate;
};

// 2x2 contingency filled cell by cell.
inline KappaOracle kappa(const std::vector<bool>& a, const std::vector<bool>& b) {
  double cell[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < a.size(); ++i) cell[a[i]][b[i]] += 1;
  const double n = static_cast<double>(a.size());
  const double p_o = (cell[0][0] + cell[1][1]) / n;
  const double a1 = (cell[1][0] + cell[1][1]) / n, b1 = (cell[0][1] + cell[1][1]) / n;
  const double p_e = a1 * b1 + (1 - a1) * (1 - b1);
  const bool degenerate = (a1 == 0 || a1 == 1) && a1 == b1;
  return {p_o, p_e, degenerate ? 0.0 : (p_o - p_e) / (1 - p_e), degenerate};
}

}  // namespace oracle
