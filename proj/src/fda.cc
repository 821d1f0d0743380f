// src/fda.cc

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

#include <algorithm>
#include <cstring>
#include <queue>
#include <string>
#include <thread>
#include <unordered_map>

#include "mtkit/error.h"

namespace mtkit {
namespace fda {

namespace {

constexpr std::uint32_t kUnknownToken = 0xFFFFFFFFu;

// Token-id sequence packed into a byte string; exact key, no hashing tricks.
std::string PackKey(const std::uint32_t* ids, std::size_t n) {
  std::string key(n * sizeof(std::uint32_t), '\0');
  std::memcpy(key.data(), ids, n * sizeof(std::uint32_t));
  return key;
}

struct HeapEntry {
  double score;
  std::size_t index;
};

struct HeapCompare {
  // priority_queue keeps the "largest"; we want highest score first and,
  // at equal scores, the lowest index first.
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.score != b.score) return a.score < b.score;
    return a.index > b.index;
  }
};

}  // namespace

void Validate(const FdaConfig& config) {
  if (config.max_order < 1)
    throw UsageError("fda: max_order must be >= 1");
  if (!(config.decay_base > 0.0 && config.decay_base < 1.0))
    throw UsageError("fda: decay_base must lie strictly between 0 and 1");
  if (config.selection_size == 0)
    throw UsageError("fda: selection_size must be >= 1");
}

SeedProfile BuildSeedProfile(const corpus::Monotext& seed,
                             const FdaConfig& config) {
  Validate(config);
  if (seed.sentences.empty())
    throw Error("fda: seed is empty, selection would be vacuous");
  SeedProfile profile;
  profile.max_order = config.max_order;
  for (const corpus::Sentence& s : seed.sentences) {
    const auto& toks = s.tokens;
    const std::size_t k = toks.size();
    corpus::Ngram scratch;
    for (std::size_t n = 1; n <= std::size_t(config.max_order) && n <= k;
         ++n) {
      for (std::size_t i = 0; i + n <= k; ++i) {
        scratch.tokens.assign(toks.begin() + i, toks.begin() + i + n);
        profile.features.insert(scratch);
      }
    }
  }
  if (profile.features.empty())
    throw Error("fda: seed contains no n-gram features");
  return profile;
}

double DecayPower(double base, std::uint64_t k) {
  double v = 1.0;
  for (std::uint64_t i = 0; i < k && v != 0.0; ++i) v *= base;
  return v;
}

double ScoreSentence(const corpus::Sentence& sentence,
                     const SeedProfile& profile, const SelectionState& state,
                     const FdaConfig& config) {
  const auto& toks = sentence.tokens;
  const std::size_t k = toks.size();
  if (k == 0) return 0.0;
  double sum = 0.0;
  corpus::Ngram scratch;
  for (std::size_t n = 1; n <= std::size_t(config.max_order) && n <= k; ++n) {
    for (std::size_t i = 0; i + n <= k; ++i) {
      scratch.tokens.assign(toks.begin() + i, toks.begin() + i + n);
      if (profile.features.find(scratch) == profile.features.end()) continue;
      auto it = state.feature_counts.find(scratch);
      std::uint64_t count = it == state.feature_counts.end() ? 0 : it->second;
      sum += DecayPower(config.decay_base, count);
    }
  }
  return sum / double(k);
}

SelectionResult Select(const corpus::Monotext& candidates,
                       const SeedProfile& profile, const FdaConfig& config,
                       std::size_t num_threads) {
  Validate(config);
  const std::size_t n_cand = candidates.sentences.size();
  const std::size_t take = std::min(config.selection_size, n_cand);

  SelectionResult result;
  result.truncated = config.selection_size > n_cand;

  // Intern seed tokens and profile features.
  std::unordered_map<std::string_view, std::uint32_t> token_ids;
  std::unordered_map<std::string, std::uint32_t> feature_ids;
  std::vector<const corpus::Ngram*> feature_ngrams;
  feature_ngrams.reserve(profile.features.size());
  {
    std::vector<std::uint32_t> ids;
    for (const corpus::Ngram& g : profile.features) {
      ids.clear();
      for (const std::string& t : g.tokens) {
        auto [it, inserted] =
            token_ids.emplace(std::string_view(t), std::uint32_t(token_ids.size()));
        ids.push_back(it->second);
      }
      auto [it, inserted] = feature_ids.emplace(
          PackKey(ids.data(), ids.size()), std::uint32_t(feature_ngrams.size()));
      if (inserted) feature_ngrams.push_back(&g);
    }
  }

  // Per-candidate profile-feature occurrence lists in the canonical
  // enumeration order (order-major, then position), flattened CSR-style.
  std::vector<std::vector<std::uint32_t>> occurrences(n_cand);
  auto preprocess = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> ids;
    for (std::size_t c = begin; c < end; ++c) {
      const auto& toks = candidates.sentences[c].tokens;
      const std::size_t k = toks.size();
      ids.clear();
      ids.reserve(k);
      bool any_known = false;
      for (const std::string& t : toks) {
        auto it = token_ids.find(std::string_view(t));
        std::uint32_t id = it == token_ids.end() ? kUnknownToken : it->second;
        any_known |= id != kUnknownToken;
        ids.push_back(id);
      }
      if (!any_known) continue;  // no unigram hit, so no n-gram can hit
      auto& occ = occurrences[c];
      for (std::size_t n = 1; n <= std::size_t(config.max_order) && n <= k;
           ++n) {
        for (std::size_t i = 0; i + n <= k; ++i) {
          bool known = true;
          for (std::size_t j = i; j < i + n; ++j)
            if (ids[j] == kUnknownToken) {
              known = false;
              break;
            }
          if (!known) continue;
          auto it = feature_ids.find(PackKey(ids.data() + i, n));
          if (it != feature_ids.end()) occ.push_back(it->second);
        }
      }
    }
  };
  if (num_threads <= 1 || n_cand < 1024) {
    preprocess(0, n_cand);
  } else {
    const std::size_t workers = std::min(num_threads, std::size_t(64));
    std::vector<std::thread> threads;
    const std::size_t chunk = (n_cand + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(begin + chunk, n_cand);
      if (begin >= end) break;
      threads.emplace_back(preprocess, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  // Memoized decay powers; powers[k] follows the same multiplication
  // sequence as DecayPower, so scores match ScoreSentence bit for bit.
  std::vector<double> powers{1.0};
  auto decay_at = [&powers, &config](std::uint64_t k) {
    while (powers.size() <= k && powers.back() != 0.0)
      powers.push_back(powers.back() * config.decay_base);
    return k < powers.size() ? powers[k] : 0.0;
  };

  std::vector<std::uint64_t> feature_counts(feature_ngrams.size(), 0);
  auto score_of = [&](std::size_t c) {
    const std::size_t len = candidates.sentences[c].tokens.size();
    if (len == 0) return 0.0;
    double sum = 0.0;
    for (std::uint32_t f : occurrences[c]) sum += decay_at(feature_counts[f]);
    return sum / double(len);
  };

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
  {
    std::vector<HeapEntry> initial;
    initial.reserve(n_cand);
    for (std::size_t c = 0; c < n_cand; ++c)
      initial.push_back({score_of(c), c});
    heap = std::priority_queue<HeapEntry, std::vector<HeapEntry>,
                               HeapCompare>(HeapCompare{}, std::move(initial));
  }

  auto& state = result.state;
  state.selected.reserve(take);
  while (state.selected.size() < take && !heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    // Scores only decrease, so a fresh score at least as high as the next
    // entry's (possibly stale, hence overestimated) score is the maximum.
    const double fresh = score_of(top.index);
    bool accept;
    if (heap.empty()) {
      accept = true;
    } else {
      const HeapEntry& next = heap.top();
      accept = fresh > next.score ||
               (fresh == next.score && top.index < next.index);
    }
    if (!accept) {
      heap.push({fresh, top.index});
      continue;
    }
    state.selected.push_back(top.index);
    for (std::uint32_t f : occurrences[top.index]) ++feature_counts[f];
  }

  for (std::size_t f = 0; f < feature_counts.size(); ++f)
    if (feature_counts[f] > 0)
      state.feature_counts.emplace(*feature_ngrams[f], feature_counts[f]);
  return result;
}

}  // namespace fda
}  // namespace mtkit
