// Translation edit rate with greedy phrase shifts.
//
// Search contract (the test oracle implements the same definition by
// exhaustive enumeration):
//   * A shift moves a contiguous hypothesis span of 1..10 tokens to any other
//     position of the remaining sequence, at cost 1.
//   * Each round picks the shift whose result has the smallest edit distance
//     to the reference; ties go to the earliest span start, then the shorter
//     span, then the earlier destination.
//   * The shift is applied only if it lowers the total (shift + distance),
//     i.e. the new distance is at least 2 below the current one.
//   * At most 50 shifts are applied.
// Total edits = shifts applied + Levenshtein distance of the final sequence.

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "loreseval/metrics.hpp"

namespace loreseval::metrics {

namespace {

using Sequence = std::vector<int>;
using Row = std::vector<std::size_t>;

class RowStepper {
 public:
  explicit RowStepper(const Sequence& reference) : ref_(reference) {}

  Row initial() const {
    Row row(ref_.size() + 1);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = c;
    return row;
  }

  // Advances `row` by one hypothesis token; returns the row minimum, a lower
  // bound on the final distance.
  std::size_t step(Row& row, int token) const {
    std::size_t diagonal = row[0];
    row[0] += 1;
    std::size_t minimum = row[0];
    for (std::size_t c = 1; c < row.size(); ++c) {
      const std::size_t up = row[c];
      const std::size_t substitute = diagonal + (token == ref_[c - 1] ? 0 : 1);
      row[c] = std::min({up + 1, row[c - 1] + 1, substitute});
      diagonal = up;
      minimum = std::min(minimum, row[c]);
    }
    return minimum;
  }

  std::size_t distance(const Sequence& hyp) const {
    Row row = initial();
    for (int token : hyp) step(row, token);
    return row.back();
  }

 private:
  const Sequence& ref_;
};

struct Shift {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t destination = 0;  // index into the sequence with the span removed
};

Sequence apply_shift(const Sequence& hyp, const Shift& shift) {
  Sequence rest;
  rest.reserve(hyp.size());
  rest.insert(rest.end(), hyp.begin(), hyp.begin() + shift.start);
  rest.insert(rest.end(), hyp.begin() + shift.start + shift.length, hyp.end());
  Sequence out;
  out.reserve(hyp.size());
  out.insert(out.end(), rest.begin(), rest.begin() + shift.destination);
  out.insert(out.end(), hyp.begin() + shift.start,
             hyp.begin() + shift.start + shift.length);
  out.insert(out.end(), rest.begin() + shift.destination, rest.end());
  return out;
}

// Returns true and fills `best`/`best_distance` when some shift brings the
// distance strictly below `bound`.
bool find_best_shift(const Sequence& hyp, const RowStepper& stepper, std::size_t bound,
                     Shift& best, std::size_t& best_distance) {
  const std::size_t n = hyp.size();
  bool found = false;
  Sequence rest;
  Row prefix;
  Row row;
  for (std::size_t start = 0; start < n; ++start) {
    const std::size_t max_len = std::min(kTerMaxShiftSpan, n - start);
    for (std::size_t length = 1; length <= max_len; ++length) {
      rest.assign(hyp.begin(), hyp.begin() + start);
      rest.insert(rest.end(), hyp.begin() + start + length, hyp.end());
      const std::size_t r = rest.size();

      prefix = stepper.initial();
      for (std::size_t dest = 0; dest <= r; ++dest) {
        if (dest != start) {
          row.assign(prefix.begin(), prefix.end());
          bool viable = true;
          for (std::size_t k = start; k < start + length && viable; ++k) {
            viable = stepper.step(row, hyp[k]) < bound;
          }
          for (std::size_t k = dest; k < r && viable; ++k) {
            viable = stepper.step(row, rest[k]) < bound;
          }
          if (viable && row.back() < bound) {
            bound = row.back();
            best = {start, length, dest};
            best_distance = bound;
            found = true;
          }
        }
        if (dest < r && stepper.step(prefix, rest[dest]) >= bound) break;
      }
    }
  }
  return found;
}

}  // namespace

std::size_t levenshtein(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::unordered_map<std::string, int> ids;
  auto encode = [&](const std::vector<std::string>& tokens) {
    Sequence out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(ids.emplace(t, ids.size()).first->second);
    return out;
  };
  const Sequence left = encode(a);
  const Sequence right = encode(b);
  return RowStepper(right).distance(left);
}

TerAlignment ter_edits(const std::vector<std::string>& hypothesis,
                       const std::vector<std::string>& reference) {
  std::unordered_map<std::string, int> ids;
  std::vector<const std::string*> vocabulary;
  auto encode = [&](const std::vector<std::string>& tokens) {
    Sequence out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      auto [it, inserted] = ids.emplace(t, static_cast<int>(ids.size()));
      if (inserted) vocabulary.push_back(&it->first);
      out.push_back(it->second);
    }
    return out;
  };
  const Sequence ref = encode(reference);
  Sequence hyp = encode(hypothesis);

  const RowStepper stepper(ref);
  std::size_t distance = stepper.distance(hyp);
  std::size_t shifts = 0;
  while (shifts < kTerMaxShifts && distance >= 2) {
    Shift best;
    std::size_t best_distance = distance;
    if (!find_best_shift(hyp, stepper, distance - 1, best, best_distance)) break;
    hyp = apply_shift(hyp, best);
    distance = best_distance;
    ++shifts;
  }

  TerAlignment out;
  out.shifts = shifts;
  out.edits = shifts + distance;
  out.shifted_hypothesis.reserve(hyp.size());
  for (int id : hyp) out.shifted_hypothesis.push_back(*vocabulary[static_cast<std::size_t>(id)]);
  return out;
}

}  // namespace loreseval::metrics
