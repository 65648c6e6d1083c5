// Serial reference loop vs the OpenMP loop over a synthetic corpus.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "loreseval/kernels.hpp"

namespace {

using namespace loreseval::metrics;

struct Synthetic {
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
};

const Synthetic& corpus(std::size_t n) {
  static std::vector<std::pair<std::size_t, Synthetic>> cache;
  for (const auto& [size, c] : cache) {
    if (size == n) return c;
  }
  static const char* vocab[] = {"an", "scéim", "fóirdheontais", "pá", "covid-19", "the", "wage",
                                "subsidy", "scheme", "is", "of", "and", "na", "agus", ",", "."};
  std::mt19937 rng(17);
  Synthetic c;
  for (std::size_t i = 0; i < n; ++i) {
    std::string h, r;
    const std::size_t len = 8 + rng() % 25;
    for (std::size_t k = 0; k < len; ++k) {
      const char* w = vocab[rng() % std::size(vocab)];
      r += (k ? " " : "") + std::string(w);
      h += (k ? " " : "") + std::string(rng() % 4 ? w : vocab[rng() % std::size(vocab)]);
    }
    c.hyps.push_back(std::move(h));
    c.refs.push_back(std::move(r));
  }
  cache.emplace_back(n, std::move(c));
  return cache.back().second;
}

void BM_CollectSerial(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(collect_serial(c.hyps, c.refs, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CollectParallel(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(collect_parallel(c.hyps, c.refs, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CollectSerial)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollectParallel)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
