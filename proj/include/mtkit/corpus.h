// include/mtkit/corpus.h

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

#ifndef MTKIT_CORPUS_H_
#define MTKIT_CORPUS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mtkit {
namespace corpus {

enum class UnicodeNormalization { kNone, kNfc };

struct TokenizerConfig {
  bool lowercase = false;
  UnicodeNormalization normalization = UnicodeNormalization::kNfc;
};

// One logical line of text. raw is the line exactly as read (no newline);
// tokens are the tokenize() output for that line under the tokenizer
// config in effect when the sentence was built.
struct Sentence {
  std::string raw;
  std::vector<std::string> tokens;

  std::size_t length() const { return tokens.size(); }
  bool operator==(const Sentence& other) const = default;
};

// Builds a sentence from already-tokenized material; raw is the tokens
// joined with single spaces.
Sentence SentenceFromTokens(std::vector<std::string> tokens);

enum class Origin { kAuthentic, kSynthetic };

struct SentencePair {
  Sentence source;
  Sentence target;
  Origin origin = Origin::kAuthentic;

  bool operator==(const SentencePair& other) const = default;
};

struct Bitext {
  std::vector<SentencePair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool operator==(const Bitext& other) const = default;
};

struct Monotext {
  std::vector<Sentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool operator==(const Monotext& other) const = default;
};

// Contiguous token subsequence, order 1..max.
struct Ngram {
  std::vector<std::string> tokens;

  std::size_t order() const { return tokens.size(); }
  bool operator==(const Ngram& other) const = default;
};

struct NgramHash {
  std::size_t operator()(const Ngram& g) const {
    // FNV-1a over token bytes with a length-prefixed frame per token, so
    // ("ab","c") and ("a","bc") hash differently.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (const std::string& t : g.tokens) {
      mix(t.size());
      for (unsigned char c : t) mix(c);
    }
    return std::size_t(h);
  }
};

using NgramCounts = std::unordered_map<Ngram, std::uint64_t, NgramHash>;
using NgramSet = std::unordered_set<Ngram, NgramHash>;

// Deterministic tokenization: UTF-8 validation, optional NFC composition,
// optional lowercasing, then a split on Unicode whitespace. Throws
// DecodeError (with byte offset) on invalid UTF-8 and FormatError if the
// input contains a newline.
Sentence Tokenize(std::string_view line, const TokenizerConfig& config);

// Every contiguous token subsequence of order 1..max_order with its
// occurrence count. A sentence of k tokens yields sum over n of (k-n+1)
// occurrences. max_order must be >= 1.
NgramCounts ExtractNgrams(const Sentence& sentence, int max_order);

// Line-oriented I/O. Path "-" reads standard input. Files are UTF-8, one
// sentence per line, LF line endings.
Monotext LoadMonotext(const std::string& path, const TokenizerConfig& config);

// Loads two aligned files; pair i combines line i of each. Throws
// AlignmentError when the line counts differ.
Bitext LoadBitext(const std::string& source_path,
                  const std::string& target_path,
                  const TokenizerConfig& config);

// Writes one raw sentence per line with a trailing newline on every line.
void SaveMonotext(const Monotext& mono, const std::string& path);
void SaveBitext(const Bitext& bitext, const std::string& source_path,
                const std::string& target_path);

// The raw lines of a file (shared by loaders and translator plumbing).
std::vector<std::string> ReadLines(const std::string& path);
void WriteLines(const std::vector<std::string>& lines,
                const std::string& path);

}  // namespace corpus
}  // namespace mtkit

#endif  // MTKIT_CORPUS_H_
