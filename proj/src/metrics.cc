// src/metrics.cc

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

#include "mtkit/metrics_internal.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <memory>
#include <random>
#include <thread>

#include "mtkit/error.h"
#include "mtkit/text.h"

namespace mtkit {
namespace metrics {

namespace {

constexpr std::size_t kBleuOrder = 4;
constexpr std::size_t kNistOrder = 5;
constexpr std::size_t kChrfOrder = 6;
constexpr std::size_t kTerShiftBlockCap = 10;

// ---------------------------------------------------------------------------
// N-gram counting over borrowed spans (token strings or code points). Keys
// point into the caller's storage, which must outlive the map.

template <typename T>
struct Span {
  const T* first = nullptr;
  std::size_t len = 0;
};

struct TokenSpanHash {
  std::size_t operator()(const Span<std::string>& s) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (std::size_t i = 0; i < s.len; ++i) {
      mix(s.first[i].size());
      for (unsigned char c : s.first[i]) mix(c);
    }
    return std::size_t(h);
  }
};

struct TokenSpanEq {
  bool operator()(const Span<std::string>& a,
                  const Span<std::string>& b) const {
    if (a.len != b.len) return false;
    for (std::size_t i = 0; i < a.len; ++i)
      if (a.first[i] != b.first[i]) return false;
    return true;
  }
};

struct CharSpanHash {
  std::size_t operator()(const Span<char32_t>& s) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < s.len; ++i) {
      h ^= std::uint64_t(s.first[i]);
      h *= 1099511628211ull;
    }
    h ^= s.len;
    h *= 1099511628211ull;
    return std::size_t(h);
  }
};

struct CharSpanEq {
  bool operator()(const Span<char32_t>& a, const Span<char32_t>& b) const {
    return a.len == b.len &&
           std::memcmp(a.first, b.first, a.len * sizeof(char32_t)) == 0;
  }
};

using TokenNgramCounts = std::unordered_map<Span<std::string>, std::uint64_t,
                                            TokenSpanHash, TokenSpanEq>;
using CharNgramCounts = std::unordered_map<Span<char32_t>, std::uint64_t,
                                           CharSpanHash, CharSpanEq>;

// All orders live in one map; spans of different length never collide.
void CountTokenNgrams(const std::vector<std::string>& tokens,
                      std::size_t max_order, TokenNgramCounts* counts) {
  const std::size_t k = tokens.size();
  for (std::size_t n = 1; n <= max_order && n <= k; ++n)
    for (std::size_t i = 0; i + n <= k; ++i)
      ++(*counts)[Span<std::string>{tokens.data() + i, n}];
}

void CountCharNgrams(const std::vector<char32_t>& chars, std::size_t max_order,
                     CharNgramCounts* counts) {
  const std::size_t k = chars.size();
  for (std::size_t n = 1; n <= max_order && n <= k; ++n)
    for (std::size_t i = 0; i + n <= k; ++i)
      ++(*counts)[Span<char32_t>{chars.data() + i, n}];
}

// Characters of a sentence with whitespace removed (token concatenation).
std::vector<char32_t> SentenceChars(const corpus::Sentence& s) {
  std::vector<char32_t> chars;
  for (const std::string& t : s.tokens) {
    std::vector<char32_t> cps = text::DecodeUtf8(t);
    chars.insert(chars.end(), cps.begin(), cps.end());
  }
  return chars;
}

std::uint64_t NgramTotal(std::size_t token_count, std::size_t order) {
  return token_count + 1 >= order ? token_count + 1 - order : 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// TER: Levenshtein plus greedy block shifts.

namespace internal {

std::uint32_t Levenshtein(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::uint32_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = std::uint32_t(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = std::uint32_t(i);
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint32_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// Exact distance when it is below limit, otherwise any value >= limit.
// Cells farther than limit off the diagonal cost more than limit already,
// so the DP only needs a band of width 2*limit+1 (Ukkonen's cutoff).
std::uint32_t LevenshteinBounded(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b,
                                 std::uint32_t limit) {
  const std::size_t n = a.size(), m = b.size();
  const std::size_t diff = n > m ? n - m : m - n;
  if (diff >= limit) return limit;
  const std::size_t band = limit;
  std::vector<std::uint32_t> prev(m + 1, limit), cur(m + 1, limit);
  for (std::size_t j = 0; j <= std::min(m, band); ++j)
    prev[j] = std::uint32_t(j);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > band ? i - band : 1;
    const std::size_t hi = std::min(m, i + band);
    cur[lo - 1] = lo == 1 ? std::min(std::uint32_t(i), limit) : limit;
    bool alive = cur[lo - 1] < limit;
    for (std::size_t j = lo; j <= hi; ++j) {
      std::uint32_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      std::uint32_t del = prev[j] < limit ? prev[j] + 1 : limit;
      std::uint32_t ins = cur[j - 1] < limit ? cur[j - 1] + 1 : limit;
      std::uint32_t best = std::min({sub, del, ins, limit});
      cur[j] = best;
      alive |= best < limit;
    }
    if (!alive) return limit;
    std::swap(prev, cur);
    std::fill(cur.begin(), cur.end(), limit);
  }
  return std::min(prev[m], limit);
}

std::vector<std::string> ApplyShift(const std::vector<std::string>& hyp,
                                    std::size_t i, std::size_t len,
                                    std::size_t j) {
  std::vector<std::string> rest;
  rest.reserve(hyp.size());
  rest.insert(rest.end(), hyp.begin(), hyp.begin() + i);
  rest.insert(rest.end(), hyp.begin() + i + len, hyp.end());
  std::vector<std::string> out;
  out.reserve(hyp.size());
  out.insert(out.end(), rest.begin(), rest.begin() + j);
  out.insert(out.end(), hyp.begin() + i, hyp.begin() + i + len);
  out.insert(out.end(), rest.begin() + j, rest.end());
  return out;
}

// Edits for one segment. Greedy: repeatedly adopt the block shift that most
// reduces the remaining edit distance (longer blocks preferred on ties,
// then lower source and landing positions). A shift is only adopted when it
// pays for itself, i.e. the distance drops by at least two (one shift costs
// one edit), so the result never exceeds the shift-free distance.
std::uint64_t TerSegmentEdits(const std::vector<std::string>& hypothesis,
                              const std::vector<std::string>& reference) {
  std::vector<std::string> hyp = hypothesis;
  std::uint64_t shifts = 0;
  std::uint32_t dist = Levenshtein(hyp, reference);
  while (dist > 1) {
    std::uint32_t best_dist = dist - 1;  // must beat this to pay the shift
    std::vector<std::string> best_hyp;
    bool found = false;
    const std::size_t max_len = std::min(kTerShiftBlockCap, hyp.size());
    for (std::size_t len = max_len; len >= 1; --len) {
      for (std::size_t i = 0; i + len <= hyp.size(); ++i) {
        const std::size_t rest_size = hyp.size() - len;
        for (std::size_t j = 0; j + len <= reference.size() && j <= rest_size;
             ++j) {
          if (j == i) continue;  // block would land where it already is
          if (!std::equal(hyp.begin() + i, hyp.begin() + i + len,
                          reference.begin() + j))
            continue;
          std::vector<std::string> shifted = ApplyShift(hyp, i, len, j);
          std::uint32_t d = LevenshteinBounded(shifted, reference, best_dist);
          if (d < best_dist) {
            best_dist = d;
            best_hyp = std::move(shifted);
            found = true;
          }
        }
      }
      if (len == 1) break;
    }
    if (!found) break;
    hyp = std::move(best_hyp);
    dist = best_dist;
    ++shifts;
  }
  return shifts + dist;
}

}  // namespace internal

namespace {

using internal::TerSegmentEdits;

// ---------------------------------------------------------------------------
// Reference-corpus statistics for NIST information weights.

struct NistInfoTable {
  TokenNgramCounts counts;  // orders 1..kNistOrder over all references
  std::uint64_t total_unigrams = 0;

  double Info(const Span<std::string>& g) const {
    auto full = counts.find(g);
    if (full == counts.end() || full->second == 0) return 0.0;
    double denom = double(full->second);
    double numer;
    if (g.len == 1) {
      numer = double(total_unigrams);
    } else {
      auto prefix = counts.find(Span<std::string>{g.first, g.len - 1});
      numer = prefix == counts.end() ? 0.0 : double(prefix->second);
    }
    if (numer <= 0.0) return 0.0;
    return std::log2(numer / denom);
  }
};

NistInfoTable BuildNistInfoTable(const std::vector<EvalPair>& pairs) {
  NistInfoTable table;
  for (const EvalPair& p : pairs) {
    CountTokenNgrams(p.reference.tokens, kNistOrder, &table.counts);
    table.total_unigrams += p.reference.tokens.size();
  }
  return table;
}

// ---------------------------------------------------------------------------
// Per-segment sufficient statistics as flat rows of doubles, shared by the
// headline corpus scores and the bootstrap resampler.

struct Engine {
  std::size_t width = 0;
  std::function<void(const EvalPair&, double*)> fill;
  std::function<double(const double*)> combine;
};

// BLEU row: match[4], hyp_total[4], hyp_len, ref_len.
Engine MakeBleuEngine() {
  Engine e;
  e.width = 2 * kBleuOrder + 2;
  e.fill = [](const EvalPair& p, double* row) {
    TokenNgramCounts hyp_counts, ref_counts;
    CountTokenNgrams(p.hypothesis.tokens, kBleuOrder, &hyp_counts);
    CountTokenNgrams(p.reference.tokens, kBleuOrder, &ref_counts);
    for (auto& [span, count] : hyp_counts) {
      auto it = ref_counts.find(span);
      if (it != ref_counts.end())
        row[span.len - 1] += double(std::min(count, it->second));
    }
    for (std::size_t n = 1; n <= kBleuOrder; ++n)
      row[kBleuOrder + n - 1] +=
          double(NgramTotal(p.hypothesis.tokens.size(), n));
    row[2 * kBleuOrder] += double(p.hypothesis.tokens.size());
    row[2 * kBleuOrder + 1] += double(p.reference.tokens.size());
  };
  e.combine = [](const double* row) {
    double c = row[2 * kBleuOrder];
    double r = row[2 * kBleuOrder + 1];
    if (c <= 0.0) return 0.0;
    double log_sum = 0.0;
    for (std::size_t n = 0; n < kBleuOrder; ++n) {
      double total = row[kBleuOrder + n];
      double precision = total > 0.0 ? row[n] / total : 0.0;
      if (precision <= 0.0) return 0.0;  // no smoothing
      log_sum += std::log(precision);
    }
    double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
    return bp * std::exp(log_sum / double(kBleuOrder));
  };
  return e;
}

// NIST row: info_match[5], hyp_total[5], hyp_len, ref_len.
Engine MakeNistEngine(std::shared_ptr<const NistInfoTable> table) {
  Engine e;
  e.width = 2 * kNistOrder + 2;
  e.fill = [table](const EvalPair& p, double* row) {
    TokenNgramCounts hyp_counts, ref_counts;
    CountTokenNgrams(p.hypothesis.tokens, kNistOrder, &hyp_counts);
    CountTokenNgrams(p.reference.tokens, kNistOrder, &ref_counts);
    for (auto& [span, count] : hyp_counts) {
      auto it = ref_counts.find(span);
      if (it == ref_counts.end()) continue;
      double matched = double(std::min(count, it->second));
      row[span.len - 1] += matched * table->Info(span);
    }
    for (std::size_t n = 1; n <= kNistOrder; ++n)
      row[kNistOrder + n - 1] +=
          double(NgramTotal(p.hypothesis.tokens.size(), n));
    row[2 * kNistOrder] += double(p.hypothesis.tokens.size());
    row[2 * kNistOrder + 1] += double(p.reference.tokens.size());
  };
  e.combine = [](const double* row) {
    double c = row[2 * kNistOrder];
    double r = row[2 * kNistOrder + 1];
    if (c <= 0.0 || r <= 0.0) return 0.0;
    double score = 0.0;
    for (std::size_t n = 0; n < kNistOrder; ++n) {
      double total = row[kNistOrder + n];
      if (total > 0.0) score += row[n] / total;
    }
    // Brevity penalty exp(beta * ln^2(min(c/r, 1))) with beta fixed so the
    // penalty is 0.5 when the hypothesis is 2/3 of the reference length.
    static const double beta =
        std::log(0.5) / (std::log(2.0 / 3.0) * std::log(2.0 / 3.0));
    double ratio = std::min(c / r, 1.0);
    double log_ratio = std::log(ratio);
    return score * std::exp(beta * log_ratio * log_ratio);
  };
  return e;
}

// TER row: edits, ref_len.
Engine MakeTerEngine() {
  Engine e;
  e.width = 2;
  e.fill = [](const EvalPair& p, double* row) {
    row[0] += double(TerSegmentEdits(p.hypothesis.tokens, p.reference.tokens));
    row[1] += double(p.reference.tokens.size());
  };
  e.combine = [](const double* row) {
    return row[1] > 0.0 ? row[0] / row[1] : 0.0;
  };
  return e;
}

// chrF row: match[6], hyp_total[6], ref_total[6].
void FillChrfRow(const EvalPair& p, double* row) {
  std::vector<char32_t> hyp_chars = SentenceChars(p.hypothesis);
  std::vector<char32_t> ref_chars = SentenceChars(p.reference);
  CharNgramCounts hyp_counts, ref_counts;
  CountCharNgrams(hyp_chars, kChrfOrder, &hyp_counts);
  CountCharNgrams(ref_chars, kChrfOrder, &ref_counts);
  for (auto& [span, count] : hyp_counts) {
    auto it = ref_counts.find(span);
    if (it != ref_counts.end())
      row[span.len - 1] += double(std::min(count, it->second));
  }
  for (std::size_t n = 1; n <= kChrfOrder; ++n) {
    row[kChrfOrder + n - 1] += double(NgramTotal(hyp_chars.size(), n));
    row[2 * kChrfOrder + n - 1] += double(NgramTotal(ref_chars.size(), n));
  }
}

// Averages precision and recall uniformly over the character orders that
// exist anywhere in the corpus; an order populated on only one side
// contributes zero, orders empty on both sides are excluded.
ChrfComponents ChrfPrFromRow(const double* row) {
  double p_sum = 0.0, r_sum = 0.0;
  std::size_t effective = 0;
  for (std::size_t n = 0; n < kChrfOrder; ++n) {
    double hyp_total = row[kChrfOrder + n];
    double ref_total = row[2 * kChrfOrder + n];
    if (hyp_total <= 0.0 && ref_total <= 0.0) continue;
    ++effective;
    if (hyp_total > 0.0) p_sum += row[n] / hyp_total;
    if (ref_total > 0.0) r_sum += row[n] / ref_total;
  }
  ChrfComponents pr;
  if (effective == 0) return pr;
  pr.precision = p_sum / double(effective);
  pr.recall = r_sum / double(effective);
  return pr;
}

double ChrfFromComponents(const ChrfComponents& pr, double beta) {
  double b2 = beta * beta;
  double denom = b2 * pr.precision + pr.recall;
  if (denom <= 0.0) return 0.0;
  return 100.0 * (1.0 + b2) * pr.precision * pr.recall / denom;
}

Engine MakeChrfEngine(double beta) {
  Engine e;
  e.width = 3 * kChrfOrder;
  e.fill = FillChrfRow;
  e.combine = [beta](const double* row) {
    return ChrfFromComponents(ChrfPrFromRow(row), beta);
  };
  return e;
}

Engine MakeEngine(Metric metric, const std::vector<EvalPair>& reference_pairs) {
  switch (metric) {
    case Metric::kBleu:
      return MakeBleuEngine();
    case Metric::kNist:
      return MakeNistEngine(std::make_shared<NistInfoTable>(
          BuildNistInfoTable(reference_pairs)));
    case Metric::kTer:
      return MakeTerEngine();
    case Metric::kChrf3:
      return MakeChrfEngine(3.0);
    case Metric::kChrf1:
      return MakeChrfEngine(1.0);
  }
  throw Error("metrics: unknown metric");
}

std::vector<double> FillRows(const Engine& e,
                             const std::vector<EvalPair>& pairs) {
  std::vector<double> rows(e.width * pairs.size(), 0.0);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    e.fill(pairs[i], rows.data() + i * e.width);
  return rows;
}

double CorpusScore(const Engine& e, const std::vector<EvalPair>& pairs) {
  if (pairs.empty()) throw Error("metrics: empty evaluation corpus");
  std::vector<double> rows = FillRows(e, pairs);
  std::vector<double> sums(e.width, 0.0);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t k = 0; k < e.width; ++k)
      sums[k] += rows[i * e.width + k];
  return e.combine(sums.data());
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unbiased bounded draw (rejection sampling over the 64-bit output).
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t v = rng();
    if (v >= threshold) return v % n;
  }
}

}  // namespace

std::vector<EvalPair> MakeEvalPairs(const corpus::Monotext& hypotheses,
                                    const corpus::Monotext& references) {
  if (hypotheses.sentences.size() != references.sentences.size())
    throw AlignmentError(
        "segment-count mismatch: " +
        std::to_string(hypotheses.sentences.size()) + " hypotheses vs " +
        std::to_string(references.sentences.size()) + " references");
  if (hypotheses.sentences.empty())
    throw Error("metrics: empty evaluation corpus");
  std::vector<EvalPair> pairs;
  pairs.reserve(hypotheses.sentences.size());
  for (std::size_t i = 0; i < hypotheses.sentences.size(); ++i)
    pairs.push_back({hypotheses.sentences[i], references.sentences[i]});
  return pairs;
}

double Bleu(const std::vector<EvalPair>& pairs) {
  return CorpusScore(MakeBleuEngine(), pairs);
}

double Nist(const std::vector<EvalPair>& pairs) {
  return CorpusScore(MakeEngine(Metric::kNist, pairs), pairs);
}

double Ter(const std::vector<EvalPair>& pairs) {
  return CorpusScore(MakeTerEngine(), pairs);
}

double Chrf(const std::vector<EvalPair>& pairs, double beta) {
  if (!(beta > 0.0)) throw UsageError("chrf: beta must be positive");
  return CorpusScore(MakeChrfEngine(beta), pairs);
}

ChrfComponents ChrfPrecisionRecall(const std::vector<EvalPair>& pairs) {
  if (pairs.empty()) throw Error("metrics: empty evaluation corpus");
  Engine e = MakeChrfEngine(1.0);
  std::vector<double> rows = FillRows(e, pairs);
  std::vector<double> sums(e.width, 0.0);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t k = 0; k < e.width; ++k)
      sums[k] += rows[i * e.width + k];
  return ChrfPrFromRow(sums.data());
}

EvalReport Evaluate(const std::vector<EvalPair>& pairs) {
  EvalReport report;
  report.bleu = Bleu(pairs);
  report.nist = Nist(pairs);
  report.ter = Ter(pairs);
  report.chrf3 = Chrf(pairs, 3.0);
  report.chrf1 = Chrf(pairs, 1.0);
  report.segment_count = pairs.size();
  return report;
}

Metric ParseMetric(const std::string& name) {
  if (name == "bleu") return Metric::kBleu;
  if (name == "nist") return Metric::kNist;
  if (name == "ter") return Metric::kTer;
  if (name == "chrf3") return Metric::kChrf3;
  if (name == "chrf1") return Metric::kChrf1;
  throw UsageError("unknown metric '" + name +
                   "' (expected bleu|nist|ter|chrf3|chrf1)");
}

std::string MetricName(Metric metric) {
  switch (metric) {
    case Metric::kBleu:
      return "bleu";
    case Metric::kNist:
      return "nist";
    case Metric::kTer:
      return "ter";
    case Metric::kChrf3:
      return "chrf3";
    case Metric::kChrf1:
      return "chrf1";
  }
  return "unknown";
}

SignificanceResult BootstrapSignificance(
    const std::vector<EvalPair>& baseline_pairs,
    const std::vector<EvalPair>& system_pairs, Metric metric,
    std::size_t resamples, std::uint64_t rng_seed, std::size_t num_threads) {
  if (baseline_pairs.size() != system_pairs.size())
    throw AlignmentError("bootstrap: segment-count mismatch: " +
                         std::to_string(baseline_pairs.size()) + " vs " +
                         std::to_string(system_pairs.size()));
  if (baseline_pairs.empty()) throw Error("bootstrap: empty corpus");
  if (resamples == 0) throw UsageError("bootstrap: resamples must be >= 1");

  // Information weights (NIST) come from the shared references.
  Engine engine = MakeEngine(metric, baseline_pairs);
  const std::size_t n = baseline_pairs.size();
  const std::size_t w = engine.width;
  std::vector<double> base_rows = FillRows(engine, baseline_pairs);
  std::vector<double> sys_rows = FillRows(engine, system_pairs);

  auto total_score = [&](const std::vector<double>& rows) {
    std::vector<double> sums(w, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < w; ++k) sums[k] += rows[i * w + k];
    return engine.combine(sums.data());
  };

  SignificanceResult result;
  result.metric = metric;
  result.resamples = resamples;
  result.delta = total_score(sys_rows) - total_score(base_rows);
  const int sign = result.delta > 0.0 ? 1 : (result.delta < 0.0 ? -1 : 0);

  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    std::size_t preserved = 0;
    std::vector<double> base_sum(w), sys_sum(w);
    for (std::size_t r = begin; r < end; ++r) {
      std::mt19937_64 rng(
          SplitMix64(rng_seed ^ (0x9E3779B97F4A7C15ull * (r + 1))));
      std::fill(base_sum.begin(), base_sum.end(), 0.0);
      std::fill(sys_sum.begin(), sys_sum.end(), 0.0);
      for (std::size_t draw = 0; draw < n; ++draw) {
        std::size_t idx = std::size_t(UniformBelow(rng, n));
        for (std::size_t k = 0; k < w; ++k) {
          base_sum[k] += base_rows[idx * w + k];
          sys_sum[k] += sys_rows[idx * w + k];
        }
      }
      double delta_r =
          engine.combine(sys_sum.data()) - engine.combine(base_sum.data());
      if ((sign > 0 && delta_r > 0.0) || (sign < 0 && delta_r < 0.0))
        ++preserved;
    }
    return preserved;
  };

  std::size_t preserved = 0;
  if (num_threads <= 1 || resamples < 16) {
    preserved = run_chunk(0, resamples);
  } else {
    const std::size_t workers = std::min(num_threads, std::size_t(64));
    const std::size_t chunk = (resamples + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::size_t> partial(workers, 0);
    for (std::size_t t = 0; t < workers; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(begin + chunk, resamples);
      if (begin >= end) break;
      threads.emplace_back(
          [&, t, begin, end] { partial[t] = run_chunk(begin, end); });
    }
    for (auto& t : threads) t.join();
    for (std::size_t p : partial) preserved += p;
  }

  result.p_value = double(resamples - preserved) / double(resamples);
  return result;
}

}  // namespace metrics
}  // namespace mtkit
