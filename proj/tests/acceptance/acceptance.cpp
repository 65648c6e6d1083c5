// Acceptance gate: one PASS/FAIL line per primary criterion. Exit status is
// nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "loreseval/corpus.hpp"
#include "loreseval/error.hpp"
#include "loreseval/greenreport.hpp"
#include "loreseval/hpo.hpp"
#include "loreseval/humaneval.hpp"
#include "loreseval/metrics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::string detail;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void report(const char* name, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!c.ok) ++failures;
  std::printf("%s  %-22s %.3fs%s%s\n", c.ok ? "PASS" : "FAIL", name, secs, c.detail.empty() ? "" : "  ",
              c.detail.c_str());
}

void green_table(Check& c) {
  namespace g = loreseval::green;
  const auto start = Clock::now();
  const g::GpuProfile gpu{"gpu", 400.0, 0.8};
  const std::pair<double, double> rows[] = {{3.51, 1.1}, {3.41, 1.1}, {5.49, 1.8}, {5.43, 1.7}};
  for (const auto& [hours, kwh] : rows) {
    const auto r = g::green_report(gpu, "run", hours, std::nullopt, true);
    c.expect(std::fabs(g::round_to(r.kwh, 1) - kwh) <= 0.05, "row " + std::to_string(hours));
    c.expect(r.kg_co2 == 0.0, "emissions not zero");
  }
  c.expect(std::chrono::duration<double>(Clock::now() - start).count() < 1.0, "slower than 1 s");
}

void relative_improvement(Check& c) {
  using loreseval::metrics::relative_improvement;
  const struct { double now, base; long pct; } quoted[] = {
      {41.2, 29.7, 39}, {75.1, 47.8, 57}, {26.4, 19.8, 33}, {52.6, 42.7, 23}};
  for (const auto& k : quoted) {
    c.expect(std::lround(relative_improvement(k.now, k.base)) == k.pct, "improvement " + std::to_string(k.pct));
  }
  c.expect(std::round(relative_improvement(41.2, 38.7) * 10) / 10 == 6.5, "6.5%");
  c.expect(std::round(relative_improvement(26.4, 25.9) * 10) / 10 == 1.9, "1.9%");
}

void hpo_grid(Check& c) {
  using namespace loreseval::hpo;
  const auto trials = enumerate_grid(default_search_space());
  c.expect(trials.size() == 648, "trial count " + std::to_string(trials.size()));
  bool found = false;
  for (const auto& t : trials) {
    found |= t.epochs == 5 && t.batch_size == 16 && t.grad_accum_steps == 8 && t.learning_rate == 3e-5 &&
             t.weight_decay == 0.1 && t.mixed_precision;
  }
  c.expect(found, "optimum missing");
  c.expect(enumerate_grid(default_search_space()) == trials, "not deterministic");
}

void metric_suite(Check& c) {
  namespace m = loreseval::metrics;
  std::mt19937 rng(20230901);

  const std::vector<std::string> refs = {"Conas a scaipeann COVID-19 agus na comharthaí a bhaineann leis",
                                         "the cat sat on the mat"};
  const auto same = m::evaluate_all(refs, refs);
  c.expect(same.bleu == 100.0 && same.ter == 0.0 && same.chrf == 1.0 && same.f1 == 1.0, "identity");

  for (int t = 0; t < 20; ++t) {
    const auto toy = testing_support::toy_corpus(rng);
    const auto r = m::evaluate_all(toy.hyps, toy.refs);
    c.expect(r.bleu >= 0 && r.bleu <= 100 && r.ter >= 0 && r.chrf >= 0 && r.chrf <= 1 && r.f1 >= 0 && r.f1 <= 1,
             "bounds");
    auto ph = toy.hyps, pr = toy.refs;
    std::reverse(ph.begin(), ph.end());
    std::reverse(pr.begin(), pr.end());
    const auto rev = m::evaluate_all(ph, pr);
    c.expect(std::fabs(rev.bleu - r.bleu) < 1e-9 && std::fabs(rev.ter - r.ter) < 1e-12 &&
                 std::fabs(rev.chrf - r.chrf) < 1e-12 && std::fabs(rev.f1 - r.f1) < 1e-12,
             "order invariance");
  }

  std::vector<std::string> upper;
  for (auto s : refs) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    upper.push_back(s);
  }
  const auto lowered = m::evaluate_all(upper, refs, m::EvaluateConfigs::with_lowercase(true));
  c.expect(lowered.bleu == 100.0 && lowered.ter == 0.0 && lowered.chrf == 1.0, "lowercase");

  c.expect(std::fabs(m::bleu_corpus({"the cat sat on the mat"}, {"the cat sat on a mat"}) - 53.7) <= 0.1,
           "hand BLEU");
  c.expect(m::ter("b a", "a b") == 0.5, "TER shift example");

  m::EvaluateConfigs ws;
  ws.bleu.scheme = m::TokenScheme::WhitespaceOnly;
  ws.ter.scheme = m::TokenScheme::WhitespaceOnly;
  for (int t = 0; t < 20; ++t) {
    const auto toy = testing_support::toy_corpus(rng, 10, 8);
    const auto r = m::evaluate_all(toy.hyps, toy.refs, ws);
    c.expect(std::fabs(r.bleu - oracle::corpus_bleu(toy.hyps, toy.refs)) <= 1e-9, "BLEU oracle");
    c.expect(std::fabs(r.ter - oracle::corpus_ter(toy.hyps, toy.refs)) <= 1e-9, "TER oracle");
    c.expect(std::fabs(r.chrf - oracle::corpus_chrf(toy.hyps, toy.refs, 6, 3.0)) <= 1e-9, "ChrF oracle");
  }
}

void kappa_suite(Check& c) {
  namespace h = loreseval::humaneval;
  std::mt19937 rng(4242);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 30;
    std::bernoulli_distribution da((rng() % 11) / 10.0), db((rng() % 11) / 10.0);
    std::vector<bool> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = da(rng), b[i] = db(rng);
    const auto got = h::cohen_kappa(a, b);
    const auto want = oracle::kappa(a, b);
    c.expect(got.degenerate == want.degenerate, "degenerate flag");
    c.expect(std::fabs(got.p_o - want.p_o) <= 1e-12, "p_o");
    if (!want.degenerate) c.expect(std::fabs(got.kappa - want.kappa) <= 1e-12, "kappa");
  }
  std::vector<bool> a(20), b(20);
  for (int i = 0; i < 10; ++i) a[i] = true;
  for (int i = 5; i < 15; ++i) b[i] = true;
  c.expect(h::cohen_kappa(a, b).kappa == 0.0, "hand case");
  const auto all = h::cohen_kappa(std::vector<bool>(25, true), std::vector<bool>(25, true));
  c.expect(all.degenerate && all.p_o == 1.0, "degenerate case");
  c.expect(h::kappa_band(0.24) == h::Band::Fair, "0.24 band");
  c.expect(h::kappa_band(0.59) == h::Band::Moderate, "0.59 band");
  c.expect(h::kappa_band(-0.11) == h::Band::None, "-0.11 band");
}

void mqm_suite(Check& c) {
  namespace h = loreseval::humaneval;
  auto rec = [](std::string seg, std::vector<h::MqmError> errors) {
    h::AnnotationRecord r;
    r.segment_id = std::move(seg);
    r.annotator_id = "A";
    r.system_id = "s";
    r.direction = "d";
    r.errors = std::move(errors);
    return r;
  };
  const h::MqmError minor{h::Category::Grammar, h::Severity::Minor, std::nullopt};
  const h::MqmError major{h::Category::Omission, h::Severity::Major, std::nullopt};
  const h::MqmError nontrans{h::Category::NonTranslation, std::nullopt, std::nullopt};
  c.expect(h::mqm_weighted_score({rec("1", {minor, minor, major})}, "s", "d").total == 12.0, "sum 12");
  c.expect(h::mqm_weighted_score({rec("1", {nontrans})}, "s", "d").total == 25.0, "sum 25");

  const auto recs = h::load_annotations(std::string(LORESEVAL_TEST_DATA) + "/annotation_tallies.jsonl");
  const auto en = h::mqm_error_counts(recs, "tuned-mllm", "en2ga", h::GroupBy::Annotator);
  const auto ga = h::mqm_error_counts(recs, "tuned-mllm", "ga2en", h::GroupBy::Annotator);
  c.expect(en.at("A1") == 53 && en.at("A2") == 82, "en2ga annotator totals");
  c.expect(ga.at("A1") == 7 && ga.at("A2") == 11, "ga2en annotator totals");
  c.expect(h::mqm_error_counts(recs, "tuned-mllm", "en2ga", h::GroupBy::Category).total() == 135, "en2ga total");
  c.expect(h::mqm_error_counts(recs, "tuned-mllm", "ga2en", h::GroupBy::Category).total() == 18, "ga2en total");

  std::mt19937 rng(1000);
  std::vector<h::AnnotationRecord> grow = {rec("1", {}), rec("2", {})};
  double prev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto cat = h::taxonomy::leaves()[rng() % h::kCategoryCount];
    std::optional<h::Severity> sev;
    if (cat != h::Category::NonTranslation) sev = rng() % 2 ? h::Severity::Major : h::Severity::Minor;
    grow[rng() % 2].errors.push_back({cat, sev, std::nullopt});
    const double now = h::mqm_weighted_score(grow, "s", "d").total;
    c.expect(now > prev, "monotonicity");
    prev = now;
  }
}

void corpus_suite(Check& c) {
  namespace cp = loreseval::corpus;
  const auto start = Clock::now();
  std::mt19937 rng(777);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 300;
    std::vector<std::string> src, tgt;
    for (std::size_t i = 0; i < n; ++i) {
      // Roughly one pair in eight repeats an earlier one.
      const std::size_t key = rng() % 8 == 0 && i > 0 ? rng() % i : i;
      src.push_back("s" + std::to_string(key));
      tgt.push_back("t" + std::to_string(key));
    }
    const auto corpus = cp::make_corpus(src, tgt, "en", "ga");
    const std::size_t distinct = cp::deduplicate(corpus).corpus.size();
    const double v = (rng() % 30) / 100.0, te = (rng() % 30) / 100.0;
    const cp::SplitRatio ratio(1.0 - v - te, v, te);
    std::optional<std::uint64_t> seed;
    if (rng() % 2) seed = rng();
    std::size_t parts = 1 + (v > 0) + (te > 0);
    if (distinct < parts) continue;
    const auto s = cp::split(corpus, ratio, seed);
    const auto dv = static_cast<std::size_t>(std::floor(distinct * v + 1e-9));
    const auto dt = static_cast<std::size_t>(std::floor(distinct * te + 1e-9));
    c.expect(s.validation.size() == dv && s.test.size() == dt, "held-out sizes");
    c.expect(s.train.size() + s.validation.size() + s.test.size() == distinct, "partition size");
    std::set<std::pair<std::string, std::string>> train, held;
    for (std::size_t i = 0; i < s.train.size(); ++i) train.emplace(s.train.source[i].text, s.train.target[i].text);
    for (const auto* part : {&s.validation, &s.test}) {
      for (std::size_t i = 0; i < part->size(); ++i) held.emplace(part->source[i].text, part->target[i].text);
    }
    c.expect(train.size() == s.train.size(), "train has duplicates");
    for (const auto& p : held) c.expect(!train.contains(p), "train and held-out overlap");
    std::set<std::size_t> indices;
    for (const auto* part : {&s.train, &s.validation, &s.test}) {
      for (const auto& seg : part->source) indices.insert(seg.index);
    }
    c.expect(indices.size() == distinct, "segments lost or repeated");
    const auto once = cp::deduplicate(corpus).corpus;
    c.expect(cp::deduplicate(once).corpus == once, "dedup idempotence");
  }
  c.expect(std::chrono::duration<double>(Clock::now() - start).count() < 60.0, "slower than one minute");
}

}  // namespace

int main() {
  const auto start = Clock::now();
  report("green-table", green_table);
  report("relative-improvement", relative_improvement);
  report("hpo-grid", hpo_grid);
  report("metric-suite", metric_suite);
  report("kappa-suite", kappa_suite);
  report("mqm-suite", mqm_suite);
  report("corpus-suite", corpus_suite);
  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  report("total-runtime", [total](Check& c) { c.expect(total < 60.0, "slower than one minute"); });
  return failures == 0 ? 0 : 1;
}
