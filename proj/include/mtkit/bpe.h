// include/mtkit/bpe.h

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

#ifndef MTKIT_BPE_H_
#define MTKIT_BPE_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mtkit/corpus.h"

namespace mtkit {
namespace bpe {

// Ordered merge rules. Applying rules in list order reproduces the
// segmentation the model was trained with; the continuation marker ("@@")
// suffixes every subword except the word-final one, which makes the
// segmentation reversible.
struct BpeModel {
  std::vector<std::pair<std::string, std::string>> merges;
  std::string end_of_word_marker = "</w>";
  std::string continuation_marker = "@@";
};

using SymbolPair = std::pair<std::string, std::string>;

struct SymbolPairHash {
  std::size_t operator()(const SymbolPair& p) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(p.first.size());
    for (unsigned char c : p.first) mix(c);
    mix(p.second.size());
    for (unsigned char c : p.second) mix(c);
    return std::size_t(h);
  }
};

// Learns num_merges merge rules from the word-frequency table of the
// corpus. Words start as code-point sequences with the end-of-word marker
// appended to the final character. Each step merges the pair with the
// highest frequency over the word table (lexicographic tie-break) and
// stops early once no pair occurs at least twice. Throws Error on an
// empty corpus.
BpeModel LearnBpe(const corpus::Monotext& corpus_text,
                  std::size_t num_merges);

// Stateful applier: builds the rule-rank table once and caches per-token
// segmentations. A codec instance is not safe to share across threads;
// create one per thread instead.
class BpeCodec {
 public:
  explicit BpeCodec(const BpeModel& model);

  // Splits every token into subwords: characters plus end-of-word marker,
  // then merges applied greedily in rule order. All subwords except the
  // word-final one carry the continuation marker.
  corpus::Sentence Apply(const corpus::Sentence& sentence);

  // Exact inverse of Apply for sentences whose tokens contain neither
  // marker. Throws FormatError on a dangling continuation marker.
  corpus::Sentence Decode(const corpus::Sentence& sentence) const;

 private:
  std::vector<std::string> SegmentToken(const std::string& token);

  const BpeModel& model_;
  std::unordered_map<SymbolPair, std::uint32_t, SymbolPairHash> ranks_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

// One-shot conveniences around BpeCodec.
corpus::Sentence ApplyBpe(const corpus::Sentence& sentence,
                          const BpeModel& model);
corpus::Sentence DecodeBpe(const corpus::Sentence& sentence,
                           const BpeModel& model);

// Model file: a header line carrying version and marker conventions,
// then one "left right" rule per line in learning order.
void SaveBpeModel(const BpeModel& model, const std::string& path);
BpeModel LoadBpeModel(const std::string& path);

}  // namespace bpe
}  // namespace mtkit

#endif  // MTKIT_BPE_H_
