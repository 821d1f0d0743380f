// tests/metrics_test.cc

// Copyright 2026  mtkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtkit/metrics.h"

#include <doctest.h>

#include "mtkit/metrics_internal.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "mtkit/error.h"
#include "oracles.h"
#include "test_util.h"

using namespace mtkit;
using metrics::EvalPair;
using testutil::Sent;

namespace {

std::vector<EvalPair> Pairs(
    const std::vector<std::pair<std::string, std::string>>& rows) {
  std::vector<EvalPair> pairs;
  for (const auto& [hyp, ref] : rows) pairs.push_back({Sent(hyp), Sent(ref)});
  return pairs;
}

}  // namespace

TEST_CASE("identical corpora score perfectly") {
  auto pairs = Pairs({{"the cat sat on the mat", "the cat sat on the mat"},
                      {"a b c d e", "a b c d e"}});
  CHECK(metrics::Bleu(pairs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(metrics::Ter(pairs) == 0.0);
  CHECK(metrics::Chrf(pairs, 3.0) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(metrics::Chrf(pairs, 1.0) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("empty corpus is an error everywhere") {
  std::vector<EvalPair> empty;
  CHECK_THROWS_AS(metrics::Bleu(empty), Error);
  CHECK_THROWS_AS(metrics::Nist(empty), Error);
  CHECK_THROWS_AS(metrics::Ter(empty), Error);
  CHECK_THROWS_AS(metrics::Chrf(empty, 3.0), Error);
}

TEST_CASE("bleu clips repeated n-grams and zeroes out on missing orders") {
  auto pairs = Pairs({{"the the the the", "the cat"}});
  // p1 = 1/4 after clipping, p2 = 0, so BLEU collapses to 0.
  CHECK(metrics::Bleu(pairs) == 0.0);
}

TEST_CASE("bleu hand-computed mixed case") {
  auto pairs =
      Pairs({{"the cat sat on the mat", "the cat sat on a mat"}});
  // Precisions 5/6, 3/5, 2/4, 1/3; equal lengths so no brevity penalty:
  // BLEU = (1/12)^(1/4).
  CHECK(metrics::Bleu(pairs) ==
        doctest::Approx(0.5372849659).epsilon(1e-9));
}

TEST_CASE("bleu brevity penalty for short hypotheses") {
  auto pairs = Pairs({{"the cat sat on", "the cat sat on a mat"}});
  // All precisions 1, c=4 < r=6: BLEU = exp(1 - 6/4).
  CHECK(metrics::Bleu(pairs) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("nist hand case: a b c d against itself scores 2") {
  auto pairs = Pairs({{"a b c d", "a b c d"}});
  CHECK(metrics::Nist(pairs) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("nist with no shared n-grams is zero") {
  auto pairs = Pairs({{"x y z", "a b c"}});
  CHECK(metrics::Nist(pairs) == 0.0);
}

TEST_CASE("nist hand case with a repeated unigram") {
  // hyp == ref == "a a b": unigram info log2(3/2) for a (twice) and
  // log2(3) for b over 3 hypothesis unigrams; both bigrams have info
  // log2(2/1) = 1 so the order-2 term is 1; the trigram term is 0.
  auto pairs = Pairs({{"a a b", "a a b"}});
  const double expected =
      (2.0 * std::log2(1.5) + std::log2(3.0)) / 3.0 + 1.0;
  CHECK(metrics::Nist(pairs) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("nist is invariant under doubling the corpus") {
  auto pairs = Pairs({{"the cat sat", "the cat sat down"},
                      {"a b c d", "a b d"},
                      {"all wrong here", "nothing shared at all"}});
  auto doubled = pairs;
  doubled.insert(doubled.end(), pairs.begin(), pairs.end());
  CHECK(metrics::Nist(doubled) ==
        doctest::Approx(metrics::Nist(pairs)).epsilon(1e-12));
}

TEST_CASE("ter identity and single substitution") {
  CHECK(metrics::Ter(Pairs({{"a b c", "a b c"}})) == 0.0);
  auto pairs = Pairs({{"one two three four five six seven eight nine xxx",
                       "one two three four five six seven eight nine ten"}});
  CHECK(metrics::Ter(pairs) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("ter counts a block shift as one edit") {
  auto pairs = Pairs({{"b a c d", "a b c d"}});
  CHECK(metrics::Ter(pairs) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("ter matches the exhaustive oracle on constructed cases") {
  // (hypothesis, reference, expected edits via exhaustive shift search)
  std::vector<std::tuple<std::string, std::string, std::uint64_t>> cases = {
      {"b a c d", "a b c d", 1},
      {"c d a b", "a b c d", 1},
      {"x a b", "a b x", 1},
      {"a b", "b a", 1},
      {"a b c", "a b c", 0},
      {"q w e r", "a s d f", 4},
      {"d a b c", "a b c d", 1},
      {"b c a x", "a b c y", 2},
  };
  for (const auto& [hyp, ref, expected] : cases) {
    auto h = Sent(hyp).tokens;
    auto r = Sent(ref).tokens;
    CHECK(oracles::ExhaustiveTerOracle(h, r, 3) == expected);
    auto pairs = Pairs({{hyp, ref}});
    CHECK(metrics::Ter(pairs) * double(r.size()) ==
          doctest::Approx(double(expected)).epsilon(1e-12));
  }
}

TEST_CASE("bounded edit distance agrees with the full DP") {
  // The shift search relies on LevenshteinBounded being exact below its
  // limit; check that against the unbounded DP over random pairs,
  // including the degenerate short-side shapes.
  std::mt19937_64 rng(407);
  const char* words[] = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<std::string> a, b;
    std::size_t n = rng() % 12, m = rng() % 12;
    for (std::size_t i = 0; i < n; ++i) a.push_back(words[rng() % 4]);
    for (std::size_t j = 0; j < m; ++j) b.push_back(words[rng() % 4]);
    std::uint32_t limit = 1 + rng() % 14;
    std::uint32_t full = metrics::internal::Levenshtein(a, b);
    std::uint32_t bounded = metrics::internal::LevenshteinBounded(a, b, limit);
    if (full < limit)
      CHECK(bounded == full);
    else
      CHECK(bounded >= limit);
  }
}

TEST_CASE("ter never exceeds the shift-free edit distance") {
  std::mt19937_64 rng(13);
  auto vocab = testutil::RandomVocabulary(rng, 6);
  for (int trial = 0; trial < 60; ++trial) {
    auto hyp = testutil::RandomMonotext(rng, vocab, 1, 8).sentences[0];
    auto ref = testutil::RandomMonotext(rng, vocab, 1, 8, 1).sentences[0];
    std::vector<EvalPair> pairs = {{hyp, ref}};
    double ter = metrics::Ter(pairs);
    double baseline =
        double(oracles::ExhaustiveTerOracle(hyp.tokens, ref.tokens, 0));
    CHECK(ter * double(ref.tokens.size()) <= baseline + 1e-9);
    // And greedy can never beat the exhaustive optimum.
    double optimum =
        double(oracles::ExhaustiveTerOracle(hyp.tokens, ref.tokens, 2));
    CHECK(ter * double(ref.tokens.size()) >= optimum - 1e-9);
  }
}

TEST_CASE("chrf extremes") {
  auto same = Pairs({{"abcdef", "abcdef"}});
  CHECK(metrics::Chrf(same, 3.0) == doctest::Approx(100.0).epsilon(1e-12));
  auto disjoint = Pairs({{"aaa bbb", "xyz zyx"}});
  CHECK(metrics::Chrf(disjoint, 3.0) == 0.0);
}

TEST_CASE("chrf ignores whitespace differences between tokens") {
  // Same characters, token boundaries in different places.
  auto pairs = Pairs({{"ab cd", "abcd"}});
  CHECK(metrics::Chrf(pairs, 1.0) ==
        doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("chrf empty-order handling") {
  // Orders beyond the text length on both sides drop out of the average:
  // two-character identity still scores 100.
  auto tiny = Pairs({{"ab", "ab"}});
  CHECK(metrics::Chrf(tiny, 3.0) == doctest::Approx(100.0).epsilon(1e-12));
  // When only the hypothesis lacks an order, that order contributes zero
  // instead of being dropped, so the score falls below 100.
  auto onesided = Pairs({{"ab", "abcdef"}});
  double score = metrics::Chrf(onesided, 1.0);
  CHECK(score > 0.0);
  CHECK(score < 50.0);
  metrics::ChrfComponents pr = metrics::ChrfPrecisionRecall(onesided);
  // Hypothesis n-grams all match: P1 = P2 = 1, orders 3..6 contribute 0.
  CHECK(pr.precision == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("chrf beta moves the score toward recall") {
  std::mt19937_64 rng(101);
  auto vocab = testutil::RandomVocabulary(rng, 14);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 100; ++trial) {
    std::size_t n = 1 + rng() % 6;
    std::vector<EvalPair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      auto hyp = testutil::RandomMonotext(rng, vocab, 1, 9).sentences[0];
      auto ref = testutil::RandomMonotext(rng, vocab, 1, 9, 1).sentences[0];
      pairs.push_back({hyp, ref});
    }
    metrics::ChrfComponents pr = metrics::ChrfPrecisionRecall(pairs);
    if (pr.precision == pr.recall) continue;
    ++checked;
    double f3 = metrics::Chrf(pairs, 3.0);
    double f1 = metrics::Chrf(pairs, 1.0);
    bool recall_heavy = pr.recall > pr.precision;
    CHECK((f3 > f1) == recall_heavy);
    CHECK((f3 < f1) == !recall_heavy);
  }
  CHECK(checked >= 50);
}

TEST_CASE("all metrics are permutation invariant") {
  std::mt19937_64 rng(71);
  auto vocab = testutil::RandomVocabulary(rng, 12);
  std::vector<EvalPair> pairs;
  for (int i = 0; i < 12; ++i)
    pairs.push_back(
        {testutil::RandomMonotext(rng, vocab, 1, 9, 4).sentences[0],
         testutil::RandomMonotext(rng, vocab, 1, 9, 4).sentences[0]});
  metrics::EvalReport before = metrics::Evaluate(pairs);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  metrics::EvalReport after = metrics::Evaluate(pairs);
  CHECK(before.bleu == doctest::Approx(after.bleu).epsilon(1e-12));
  CHECK(before.nist == doctest::Approx(after.nist).epsilon(1e-12));
  CHECK(before.ter == doctest::Approx(after.ter).epsilon(1e-12));
  CHECK(before.chrf3 == doctest::Approx(after.chrf3).epsilon(1e-12));
  CHECK(before.chrf1 == doctest::Approx(after.chrf1).epsilon(1e-12));
}

TEST_CASE("bootstrap null case: identical systems never preserve a sign") {
  std::mt19937_64 rng(3);
  auto vocab = testutil::RandomVocabulary(rng, 10);
  std::vector<EvalPair> pairs;
  for (int i = 0; i < 30; ++i)
    pairs.push_back(
        {testutil::RandomMonotext(rng, vocab, 1, 8, 4).sentences[0],
         testutil::RandomMonotext(rng, vocab, 1, 8, 4).sentences[0]});
  metrics::SignificanceResult result = metrics::BootstrapSignificance(
      pairs, pairs, metrics::Metric::kBleu, 200, 42);
  CHECK(result.delta == 0.0);
  CHECK(result.p_value >= 0.9);
}

TEST_CASE("bootstrap dominance: strictly better system gets p zero") {
  std::mt19937_64 rng(19);
  auto vocab = testutil::RandomVocabulary(rng, 10);
  std::vector<EvalPair> baseline, system;
  for (int i = 0; i < 25; ++i) {
    auto ref = testutil::RandomMonotext(rng, vocab, 1, 8, 5).sentences[0];
    auto bad = testutil::RandomMonotext(rng, vocab, 1, 8, 5).sentences[0];
    system.push_back({ref, ref});  // perfect on every segment
    baseline.push_back({bad, ref});
  }
  metrics::SignificanceResult result = metrics::BootstrapSignificance(
      baseline, system, metrics::Metric::kTer, 300, 7);
  CHECK(result.delta < 0.0);  // TER: lower is better, so delta negative
  CHECK(result.p_value == 0.0);
}

TEST_CASE("bootstrap is deterministic and thread-count independent") {
  std::mt19937_64 rng(29);
  auto vocab = testutil::RandomVocabulary(rng, 10);
  std::vector<EvalPair> baseline, system;
  for (int i = 0; i < 20; ++i) {
    auto ref = testutil::RandomMonotext(rng, vocab, 1, 9, 4).sentences[0];
    auto a = testutil::RandomMonotext(rng, vocab, 1, 9, 4).sentences[0];
    auto b = ref;
    if (i % 3 == 0) b = a;  // mixed wins/ties
    baseline.push_back({a, ref});
    system.push_back({b, ref});
  }
  auto r1 = metrics::BootstrapSignificance(baseline, system,
                                           metrics::Metric::kChrf3, 500, 99, 1);
  auto r2 = metrics::BootstrapSignificance(baseline, system,
                                           metrics::Metric::kChrf3, 500, 99, 1);
  auto r4 = metrics::BootstrapSignificance(baseline, system,
                                           metrics::Metric::kChrf3, 500, 99, 4);
  CHECK(r1.p_value == r2.p_value);
  CHECK(r1.p_value == r4.p_value);
  CHECK(r1.delta == r2.delta);
  // p times resamples is a whole number of resamples.
  double scaled = r1.p_value * double(r1.resamples);
  CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-9));
}

TEST_CASE("bootstrap rejects misaligned corpora") {
  auto a = Pairs({{"x", "x"}, {"y", "y"}});
  auto b = Pairs({{"x", "x"}});
  CHECK_THROWS_AS(metrics::BootstrapSignificance(
                      a, b, metrics::Metric::kBleu, 10, 1),
                  AlignmentError);
}

TEST_CASE("evaluate fills the full report") {
  auto pairs = Pairs({{"the cat sat on the mat", "the cat sat on the mat"}});
  metrics::EvalReport report = metrics::Evaluate(pairs);
  CHECK(report.bleu == doctest::Approx(1.0));
  CHECK(report.ter == 0.0);
  CHECK(report.chrf3 == doctest::Approx(100.0));
  CHECK(report.chrf1 == doctest::Approx(100.0));
  CHECK(report.nist > 0.0);
  CHECK(report.segment_count == 1);
}

TEST_CASE("metric names round-trip") {
  for (auto m : {metrics::Metric::kBleu, metrics::Metric::kNist,
                 metrics::Metric::kTer, metrics::Metric::kChrf3,
                 metrics::Metric::kChrf1})
    CHECK(metrics::ParseMetric(metrics::MetricName(m)) == m);
  CHECK_THROWS_AS(metrics::ParseMetric("meteor"), UsageError);
}
