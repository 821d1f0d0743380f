// include/mtkit/fda.h

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

#ifndef MTKIT_FDA_H_
#define MTKIT_FDA_H_

#include <cstdint>
#include <vector>

#include "mtkit/corpus.h"

namespace mtkit {
namespace fda {

// Feature-decay data selection. A candidate sentence s is scored against
// the pool L of already-selected sentences as
//
//   score(s | L) = sum over n-gram occurrences g in s, g in seed profile,
//                  of decay_base ^ count_L(g), divided by length(s)
//
// where count_L(g) is how often g occurs across the pool. Selection is a
// greedy loop over the highest-scoring candidate; covering a feature decays
// its value for everyone else, which pushes the pool toward variety.
struct FdaConfig {
  int max_order = 3;
  double decay_base = 0.5;
  std::size_t selection_size = 1;
};

// Throws UsageError when max_order < 1, decay_base outside (0,1) or
// selection_size == 0.
void Validate(const FdaConfig& config);

// The n-gram features of the seed text; membership defines which n-grams
// can contribute score. Immutable once built.
struct SeedProfile {
  int max_order = 3;
  corpus::NgramSet features;
};

// Union of seed n-grams of orders 1..max_order. Throws Error when the seed
// has no sentences or no features at all (selection would be vacuous).
SeedProfile BuildSeedProfile(const corpus::Monotext& seed,
                             const FdaConfig& config);

// L and the per-feature occurrence counts that drive the decay. Counts are
// kept only for seed-profile features; a missing entry means zero.
struct SelectionState {
  std::vector<std::size_t> selected;
  corpus::NgramCounts feature_counts;
};

// decay_base^k computed by repeated multiplication. select() memoizes the
// same recurrence, so both paths produce bit-identical scores.
double DecayPower(double base, std::uint64_t k);

// Score of one sentence against the current state. Occurrences are
// enumerated order-major (all unigrams left to right, then bigrams, ...),
// which fixes the floating-point summation order.
double ScoreSentence(const corpus::Sentence& sentence,
                     const SeedProfile& profile, const SelectionState& state,
                     const FdaConfig& config);

struct SelectionResult {
  SelectionState state;         // state.selected is the selection order
  bool truncated = false;       // selection_size exceeded the candidate count

  const std::vector<std::size_t>& indices() const { return state.selected; }
};

// Greedy selection of config.selection_size candidates (all of them, with
// truncated=true, when the pool is smaller). Deterministic: score ties
// break toward the lower candidate index.
//
// Internally this runs a lazy max-heap: popped entries carry possibly stale
// scores, which are safe to re-check because scores only ever decrease as
// feature counts grow. The candidate preprocessing pass may run on several
// threads; results do not depend on num_threads.
SelectionResult Select(const corpus::Monotext& candidates,
                       const SeedProfile& profile, const FdaConfig& config,
                       std::size_t num_threads = 1);

}  // namespace fda
}  // namespace mtkit

#endif  // MTKIT_FDA_H_
