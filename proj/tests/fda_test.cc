// tests/fda_test.cc

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

#include "mtkit/fda.h"

#include <doctest.h>

#include <random>

#include "mtkit/error.h"
#include "oracles.h"
#include "test_util.h"

using namespace mtkit;
using testutil::Mono;
using testutil::Sent;

namespace {

fda::FdaConfig Config(std::size_t size, int order = 3, double decay = 0.5) {
  fda::FdaConfig config;
  config.selection_size = size;
  config.max_order = order;
  config.decay_base = decay;
  return config;
}

}  // namespace

TEST_CASE("seed profile enumerates seed n-grams") {
  auto profile = fda::BuildSeedProfile(Mono({"the cat"}), Config(1));
  CHECK(profile.features.size() == 3);
  CHECK(profile.features.count(corpus::Ngram{{"the"}}) == 1);
  CHECK(profile.features.count(corpus::Ngram{{"cat"}}) == 1);
  CHECK(profile.features.count(corpus::Ngram{{"the", "cat"}}) == 1);
}

TEST_CASE("seed profile has set semantics") {
  auto once = fda::BuildSeedProfile(Mono({"the cat"}), Config(1));
  auto twice = fda::BuildSeedProfile(Mono({"the cat", "the cat"}), Config(1));
  CHECK(once.features == twice.features);
}

TEST_CASE("empty or featureless seed is an error") {
  CHECK_THROWS_AS(fda::BuildSeedProfile(corpus::Monotext{}, Config(1)), Error);
  CHECK_THROWS_AS(fda::BuildSeedProfile(Mono({""}), Config(1)), Error);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(fda::Validate(Config(1, 0)), UsageError);
  CHECK_THROWS_AS(fda::Validate(Config(1, 3, 0.0)), UsageError);
  CHECK_THROWS_AS(fda::Validate(Config(1, 3, 1.0)), UsageError);
  CHECK_THROWS_AS(fda::Validate(Config(0)), UsageError);
  CHECK_NOTHROW(fda::Validate(Config(1)));
}

TEST_CASE("score of a fresh sentence counts each matching occurrence once") {
  auto config = Config(1);
  auto profile = fda::BuildSeedProfile(Mono({"the cat"}), config);
  fda::SelectionState empty_state;
  CHECK(fda::ScoreSentence(Sent("the cat"), profile, empty_state, config) ==
        1.5);
}

TEST_CASE("score halves once features are covered once") {
  auto config = Config(1);
  auto profile = fda::BuildSeedProfile(Mono({"the cat"}), config);
  fda::SelectionState state;
  state.feature_counts[corpus::Ngram{{"the"}}] = 1;
  state.feature_counts[corpus::Ngram{{"cat"}}] = 1;
  state.feature_counts[corpus::Ngram{{"the", "cat"}}] = 1;
  CHECK(fda::ScoreSentence(Sent("the cat"), profile, state, config) == 0.75);
}

TEST_CASE("sentence sharing nothing with the seed scores zero") {
  auto config = Config(1);
  auto profile = fda::BuildSeedProfile(Mono({"the cat"}), config);
  fda::SelectionState state;
  CHECK(fda::ScoreSentence(Sent("dog bird"), profile, state, config) == 0.0);
  CHECK(fda::ScoreSentence(Sent(""), profile, state, config) == 0.0);
}

TEST_CASE("decay is exactly one factor per covered occurrence") {
  auto config = Config(1);
  auto profile = fda::BuildSeedProfile(Mono({"g"}), config);
  corpus::Sentence candidate = Sent("g");
  fda::SelectionState state;
  double before = fda::ScoreSentence(candidate, profile, state, config);
  state.feature_counts[corpus::Ngram{{"g"}}] = 1;
  double after = fda::ScoreSentence(candidate, profile, state, config);
  CHECK(after == 0.5 * before);
  state.feature_counts[corpus::Ngram{{"g"}}] = 2;
  CHECK(fda::ScoreSentence(candidate, profile, state, config) ==
        0.5 * after);
}

TEST_CASE("monotone decay: growing counts never increase the score") {
  std::mt19937_64 rng(5);
  auto vocab = testutil::RandomVocabulary(rng, 12);
  auto config = Config(1);
  for (int trial = 0; trial < 30; ++trial) {
    auto seed = testutil::RandomMonotext(rng, vocab, 3, 8, 1);
    auto profile = fda::BuildSeedProfile(seed, config);
    auto sentence = testutil::RandomMonotext(rng, vocab, 1, 8, 1).sentences[0];
    fda::SelectionState state;
    double last = fda::ScoreSentence(sentence, profile, state, config);
    for (int bump = 0; bump < 5; ++bump) {
      // Raise the count of a random profile feature.
      auto it = profile.features.begin();
      std::advance(it, rng() % profile.features.size());
      state.feature_counts[*it] += 1 + rng() % 3;
      double now = fda::ScoreSentence(sentence, profile, state, config);
      CHECK(now <= last);
      last = now;
    }
  }
}

TEST_CASE("score bounds") {
  std::mt19937_64 rng(9);
  auto vocab = testutil::RandomVocabulary(rng, 10);
  auto config = Config(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    auto seed = testutil::RandomMonotext(rng, vocab, 3, 8, 1);
    auto profile = fda::BuildSeedProfile(seed, config);
    auto sentence =
        testutil::RandomMonotext(rng, vocab, 1, 10, 1).sentences[0];
    fda::SelectionState state;
    double score = fda::ScoreSentence(sentence, profile, state, config);
    CHECK(score >= 0.0);
    CHECK(score <= double(config.max_order));
  }
}

TEST_CASE("selection matches the full-rescan oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    auto vocab = testutil::RandomVocabulary(rng, 6 + rng() % 20);
    auto seed = testutil::RandomMonotext(rng, vocab, 1 + rng() % 5, 10, 1);
    auto pool = testutil::RandomMonotext(rng, vocab, 2 + rng() % 60, 12);
    auto config = Config(1 + rng() % pool.size(), 1 + rng() % 3);
    auto profile = fda::BuildSeedProfile(seed, config);

    auto expected = oracles::GreedySelectionOracle(pool, profile, config);
    auto actual = fda::Select(pool, profile, config);
    CHECK(actual.indices() == expected);
  }
}

TEST_CASE("selection from the seed itself saturates") {
  auto seed = Mono({"a b", "c d", "e f"});
  auto config = Config(3);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto result = fda::Select(seed, profile, config);
  CHECK(result.indices().size() == 3);
  CHECK_FALSE(result.truncated);
  // Everything shares features with itself, so all scores were positive.
  std::vector<std::size_t> sorted = result.indices();
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("oversized selection truncates with a warning flag") {
  auto seed = Mono({"a b"});
  auto pool = Mono({"a x", "b y"});
  auto config = Config(10);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto result = fda::Select(pool, profile, config);
  CHECK(result.truncated);
  CHECK(result.indices().size() == 2);
}

TEST_CASE("zero-score sentences come last in index order") {
  auto seed = Mono({"hit"});
  auto pool = Mono({"miss1 x", "hit", "miss2 y", "miss3 z"});
  auto config = Config(4);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto result = fda::Select(pool, profile, config);
  CHECK(result.indices() == std::vector<std::size_t>{1, 0, 2, 3});
}

TEST_CASE("ties break toward the lower candidate index") {
  auto seed = Mono({"a"});
  auto pool = Mono({"a", "a", "a"});
  auto config = Config(3);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto result = fda::Select(pool, profile, config);
  CHECK(result.indices() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("selected multiset of texts is stable under permutation") {
  // With distinct scores the chosen sentences cannot depend on candidate
  // order; permutation only relabels indices.
  auto seed = Mono({"alpha beta gamma delta"});
  auto pool = Mono({"alpha beta gamma delta", "alpha beta gamma",
                    "alpha beta", "alpha", "unrelated"});
  auto config = Config(3);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto pick_texts = [&](const corpus::Monotext& candidates) {
    auto result = fda::Select(candidates, profile, config);
    std::vector<std::string> texts;
    for (std::size_t idx : result.indices())
      texts.push_back(candidates.sentences[idx].raw);
    std::sort(texts.begin(), texts.end());
    return texts;
  };
  corpus::Monotext shuffled = pool;
  std::reverse(shuffled.sentences.begin(), shuffled.sentences.end());
  CHECK(pick_texts(pool) == pick_texts(shuffled));
}

TEST_CASE("feature counts equal occurrence totals over the selection") {
  auto seed = Mono({"a b"});
  auto pool = Mono({"a a b", "b b", "a"});
  auto config = Config(3);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto result = fda::Select(pool, profile, config);
  REQUIRE(result.indices().size() == 3);
  CHECK(result.state.feature_counts.at(corpus::Ngram{{"a"}}) == 3);
  CHECK(result.state.feature_counts.at(corpus::Ngram{{"b"}}) == 3);
  // The bigram "a b" occurs once in the pool, inside "a a b".
  CHECK(result.state.feature_counts.at(corpus::Ngram{{"a", "b"}}) == 1);
}

TEST_CASE("heap churn under heavy ties still matches the oracle") {
  // Every candidate identical: each pick stales every cached score, which
  // maximizes lazy re-checks; selection must come out in index order.
  auto seed = Mono({"x y z"});
  corpus::Monotext pool;
  for (int i = 0; i < 500; ++i) pool.sentences.push_back(Sent("x y z"));
  auto config = Config(500);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto result = fda::Select(pool, profile, config);
  REQUIRE(result.indices().size() == 500);
  for (std::size_t i = 0; i < 500; ++i) CHECK(result.indices()[i] == i);

  // Mixed-churn variant: two interleaved cohorts that alternate as the
  // current maximum while their shared features decay.
  corpus::Monotext mixed;
  for (int i = 0; i < 120; ++i)
    mixed.sentences.push_back(Sent(i % 2 == 0 ? "x y" : "y z"));
  auto config2 = Config(120);
  auto expected = oracles::GreedySelectionOracle(mixed, profile, config2);
  CHECK(fda::Select(mixed, profile, config2).indices() == expected);
}

TEST_CASE("multi-threaded preprocessing changes nothing") {
  std::mt19937_64 rng(77);
  auto vocab = testutil::RandomVocabulary(rng, 25);
  auto seed = testutil::RandomMonotext(rng, vocab, 10, 10, 1);
  auto pool = testutil::RandomMonotext(rng, vocab, 3000, 12);
  auto config = Config(200);
  auto profile = fda::BuildSeedProfile(seed, config);
  auto one = fda::Select(pool, profile, config, 1);
  auto four = fda::Select(pool, profile, config, 4);
  CHECK(one.indices() == four.indices());
}

TEST_CASE("internal scoring equals the public scoring operation bit for bit") {
  // Select with size 1 must pick the argmax of the public score function;
  // comparing the winning score transitively checks the fast path.
  std::mt19937_64 rng(123);
  auto vocab = testutil::RandomVocabulary(rng, 15);
  for (int trial = 0; trial < 20; ++trial) {
    auto seed = testutil::RandomMonotext(rng, vocab, 4, 8, 1);
    auto pool = testutil::RandomMonotext(rng, vocab, 30, 10);
    auto config = Config(pool.size(), 3, 0.3);  // non-dyadic decay
    auto profile = fda::BuildSeedProfile(seed, config);
    auto expected = oracles::GreedySelectionOracle(pool, profile, config);
    auto actual = fda::Select(pool, profile, config);
    CHECK(actual.indices() == expected);
  }
}
