// include/mtkit/metrics.h

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

#ifndef MTKIT_METRICS_H_
#define MTKIT_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mtkit/corpus.h"

namespace mtkit {
namespace metrics {

// One evaluation segment: system output against a single human reference.
struct EvalPair {
  corpus::Sentence hypothesis;
  corpus::Sentence reference;
};

// Builds the aligned segment list; throws AlignmentError when the corpora
// have different sizes and Error when they are empty.
std::vector<EvalPair> MakeEvalPairs(const corpus::Monotext& hypotheses,
                                    const corpus::Monotext& references);

// Corpus BLEU: geometric mean of clipped n-gram precisions for n = 1..4
// times the brevity penalty exp(1 - r/c) for c < r. No smoothing: any
// zero precision gives 0.
double Bleu(const std::vector<EvalPair>& pairs);

// Corpus NIST (n = 1..5): per order, information-weighted co-occurrence
// counts over hypothesis n-gram counts, summed across orders, times the
// NIST brevity penalty. Information weights come from the reference
// corpus statistics.
double Nist(const std::vector<EvalPair>& pairs);

// Corpus TER: total edits (insert/delete/substitute at cost 1 plus block
// shifts at cost 1) over total reference tokens. Shifts are searched
// greedily; a shifted block must match the reference exactly at its
// landing position and is capped at 10 tokens.
double Ter(const std::vector<EvalPair>& pairs);

// Corpus chrF on a 0-100 scale: character n-gram precision and recall for
// n = 1..6 (whitespace removed), each averaged uniformly over orders, then
// combined as (1+b^2)*P*R / (b^2*P + R).
double Chrf(const std::vector<EvalPair>& pairs, double beta);

// The aggregate P and R underlying Chrf, for callers that need the
// precision/recall balance itself.
struct ChrfComponents {
  double precision = 0.0;
  double recall = 0.0;
};
ChrfComponents ChrfPrecisionRecall(const std::vector<EvalPair>& pairs);

struct EvalReport {
  double bleu = 0.0;   // 0-1
  double nist = 0.0;   // >= 0
  double ter = 0.0;    // >= 0
  double chrf3 = 0.0;  // 0-100
  double chrf1 = 0.0;  // 0-100
  std::size_t segment_count = 0;
};
EvalReport Evaluate(const std::vector<EvalPair>& pairs);

enum class Metric { kBleu, kNist, kTer, kChrf3, kChrf1 };
Metric ParseMetric(const std::string& name);  // throws UsageError
std::string MetricName(Metric metric);

struct SignificanceResult {
  Metric metric = Metric::kBleu;
  double delta = 0.0;    // system minus baseline on the full corpus
  double p_value = 0.0;  // fraction of resamples that do not preserve
                         // the strict sign of delta
  std::size_t resamples = 0;
};

// Paired bootstrap resampling over segments. Both corpora must be aligned
// to the same references segment-for-segment. A resample preserves the
// observed result only when its delta has the same strict sign as the
// full-corpus delta; ties never preserve, so identical systems get
// p_value = 1. Deterministic for a fixed rng_seed and independent of
// num_threads. For NIST the information weights are frozen from the full
// reference corpus rather than recomputed per resample.
SignificanceResult BootstrapSignificance(
    const std::vector<EvalPair>& baseline_pairs,
    const std::vector<EvalPair>& system_pairs, Metric metric,
    std::size_t resamples, std::uint64_t rng_seed,
    std::size_t num_threads = 1);

}  // namespace metrics
}  // namespace mtkit

#endif  // MTKIT_METRICS_H_
