// src/bpe.cc

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

#include "mtkit/bpe.h"

#include <algorithm>
#include <queue>

#include "mtkit/error.h"
#include "mtkit/text.h"

namespace mtkit {
namespace bpe {

namespace {

constexpr const char* kModelMagic = "#mtkit-bpe";
constexpr const char* kModelVersion = "v1";

std::vector<std::string> SplitToSymbols(const std::string& token,
                                        const std::string& eow) {
  std::vector<char32_t> cps = text::DecodeUtf8(token);
  std::vector<std::string> symbols;
  symbols.reserve(cps.size());
  for (char32_t cp : cps) {
    std::string s;
    text::AppendUtf8(&s, cp);
    symbols.push_back(std::move(s));
  }
  if (!symbols.empty()) symbols.back() += eow;
  return symbols;
}

// Replaces every left-to-right non-overlapping occurrence of the pair.
std::vector<std::string> MergePairInWord(const std::vector<std::string>& word,
                                         const SymbolPair& pair) {
  std::vector<std::string> out;
  out.reserve(word.size());
  std::size_t i = 0;
  while (i < word.size()) {
    if (i + 1 < word.size() && word[i] == pair.first &&
        word[i + 1] == pair.second) {
      out.push_back(pair.first + pair.second);
      i += 2;
    } else {
      out.push_back(word[i]);
      ++i;
    }
  }
  return out;
}

using PairCounts = std::unordered_map<SymbolPair, std::int64_t, SymbolPairHash>;

void CountPairsInWord(const std::vector<std::string>& word,
                      std::int64_t weight, PairCounts* counts) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    (*counts)[SymbolPair(word[i], word[i + 1])] += weight;
}

struct LearnHeapEntry {
  std::int64_t freq;
  SymbolPair pair;
};

struct LearnHeapCompare {
  // Highest frequency first; at equal frequency the lexicographically
  // smaller pair wins.
  bool operator()(const LearnHeapEntry& a, const LearnHeapEntry& b) const {
    if (a.freq != b.freq) return a.freq < b.freq;
    return a.pair > b.pair;
  }
};

}  // namespace

BpeModel LearnBpe(const corpus::Monotext& corpus_text,
                  std::size_t num_merges) {
  BpeModel model;

  // Word-frequency table.
  std::unordered_map<std::string, std::int64_t> word_freq;
  for (const corpus::Sentence& s : corpus_text.sentences)
    for (const std::string& t : s.tokens) ++word_freq[t];
  if (word_freq.empty()) throw Error("bpe: cannot learn from an empty corpus");

  // Canonical word order keeps runs reproducible across standard-library
  // versions; aggregate statistics do not depend on it.
  std::vector<std::pair<std::string, std::int64_t>> words(word_freq.begin(),
                                                          word_freq.end());
  std::sort(words.begin(), words.end());

  std::vector<std::vector<std::string>> vocab;
  std::vector<std::int64_t> freqs;
  vocab.reserve(words.size());
  for (auto& [word, freq] : words) {
    vocab.push_back(SplitToSymbols(word, model.end_of_word_marker));
    freqs.push_back(freq);
  }

  // Pair statistics over the word table, plus an index pair -> {word ->
  // occurrences} so a merge only touches the words it changes. The heap
  // holds possibly stale entries; an entry is live only while its recorded
  // frequency matches the stats table.
  PairCounts stats;
  std::unordered_map<SymbolPair,
                     std::unordered_map<std::uint32_t, std::int64_t>,
                     SymbolPairHash>
      where;
  for (std::uint32_t w = 0; w < vocab.size(); ++w) {
    PairCounts local;
    CountPairsInWord(vocab[w], 1, &local);
    for (auto& [pair, count] : local) {
      stats[pair] += count * freqs[w];
      where[pair][w] = count;
    }
  }

  std::priority_queue<LearnHeapEntry, std::vector<LearnHeapEntry>,
                      LearnHeapCompare>
      heap;
  for (auto& [pair, freq] : stats) heap.push({freq, pair});

  while (model.merges.size() < num_merges && !heap.empty()) {
    LearnHeapEntry top = heap.top();
    heap.pop();
    auto live = stats.find(top.pair);
    if (live == stats.end() || live->second != top.freq) continue;  // stale
    if (top.freq < 2) break;

    const SymbolPair best = top.pair;
    const std::string merged = best.first + best.second;
    if (merged == model.end_of_word_marker ||
        merged == model.continuation_marker)
      throw FormatError("bpe: learned symbol collides with marker '" +
                        merged + "'");

    // Rewrite the affected words and diff their pair statistics.
    auto hit = where.find(best);
    std::vector<std::uint32_t> affected;
    affected.reserve(hit->second.size());
    for (auto& [w, count] : hit->second) affected.push_back(w);
    for (std::uint32_t w : affected) {
      PairCounts diff;
      CountPairsInWord(vocab[w], -1, &diff);
      vocab[w] = MergePairInWord(vocab[w], best);
      CountPairsInWord(vocab[w], +1, &diff);
      for (auto& [pair, d] : diff) {
        if (d == 0) continue;
        std::int64_t& global = stats[pair];
        global += d * freqs[w];
        if (global > 0)
          heap.push({global, pair});
        else
          stats.erase(pair);
        auto& entry = where[pair];
        auto it = entry.find(w);
        std::int64_t occurrences = (it == entry.end() ? 0 : it->second) + d;
        if (occurrences > 0)
          entry[w] = occurrences;
        else if (it != entry.end())
          entry.erase(it);
      }
    }
    stats.erase(best);
    where.erase(best);
    model.merges.push_back(best);
  }
  return model;
}

BpeCodec::BpeCodec(const BpeModel& model) : model_(model) {
  ranks_.reserve(model.merges.size());
  for (std::uint32_t r = 0; r < model.merges.size(); ++r)
    ranks_.emplace(model.merges[r], r);
}

std::vector<std::string> BpeCodec::SegmentToken(const std::string& token) {
  auto cached = cache_.find(token);
  if (cached != cache_.end()) return cached->second;

  std::vector<std::string> symbols =
      SplitToSymbols(token, model_.end_of_word_marker);
  while (symbols.size() >= 2) {
    // Lowest-rank adjacent pair; merging can create pairs with earlier
    // rules, so the search restarts each round.
    std::uint32_t best_rank = 0;
    const SymbolPair* best = nullptr;
    SymbolPair scratch;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      scratch.first = symbols[i];
      scratch.second = symbols[i + 1];
      auto it = ranks_.find(scratch);
      if (it == ranks_.end()) continue;
      if (best == nullptr || it->second < best_rank) {
        best_rank = it->second;
        best = &it->first;
      }
    }
    if (best == nullptr) break;
    symbols = MergePairInWord(symbols, *best);
  }
  cache_.emplace(token, symbols);
  return symbols;
}

corpus::Sentence BpeCodec::Apply(const corpus::Sentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.tokens.size());
  const std::string& eow = model_.end_of_word_marker;
  const std::string& cont = model_.continuation_marker;
  for (const std::string& token : sentence.tokens) {
    std::vector<std::string> symbols = SegmentToken(token);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 == symbols.size()) {
        // Word-final subword: strip the end-of-word marker.
        std::string& last = symbols[i];
        if (last.size() >= eow.size() &&
            last.compare(last.size() - eow.size(), eow.size(), eow) == 0)
          last.resize(last.size() - eow.size());
        out.push_back(std::move(last));
      } else {
        out.push_back(symbols[i] + cont);
      }
    }
  }
  return corpus::SentenceFromTokens(std::move(out));
}

corpus::Sentence BpeCodec::Decode(const corpus::Sentence& sentence) const {
  const std::string& cont = model_.continuation_marker;
  std::vector<std::string> out;
  std::string pending;
  bool open = false;
  for (const std::string& token : sentence.tokens) {
    bool continues =
        token.size() >= cont.size() &&
        token.compare(token.size() - cont.size(), cont.size(), cont) == 0;
    if (continues) {
      pending += token.substr(0, token.size() - cont.size());
      open = true;
    } else {
      pending += token;
      out.push_back(std::move(pending));
      pending.clear();
      open = false;
    }
  }
  if (open)
    throw FormatError("bpe: dangling continuation marker at sentence end");
  return corpus::SentenceFromTokens(std::move(out));
}

corpus::Sentence ApplyBpe(const corpus::Sentence& sentence,
                          const BpeModel& model) {
  BpeCodec codec(model);
  return codec.Apply(sentence);
}

corpus::Sentence DecodeBpe(const corpus::Sentence& sentence,
                           const BpeModel& model) {
  BpeCodec codec(model);
  return codec.Decode(sentence);
}

void SaveBpeModel(const BpeModel& model, const std::string& path) {
  auto check_symbol = [](const std::string& s, const char* what) {
    if (s.empty() || s.find_first_of(" \t\n") != std::string::npos)
      throw FormatError(std::string("bpe: ") + what +
                        " must be non-empty and whitespace-free: '" + s + "'");
  };
  check_symbol(model.end_of_word_marker, "end-of-word marker");
  check_symbol(model.continuation_marker, "continuation marker");
  std::vector<std::string> lines;
  lines.reserve(model.merges.size() + 1);
  lines.push_back(std::string(kModelMagic) + " " + kModelVersion + " eow:" +
                  model.end_of_word_marker + " cont:" +
                  model.continuation_marker);
  for (const auto& [left, right] : model.merges) {
    check_symbol(left, "merge symbol");
    check_symbol(right, "merge symbol");
    lines.push_back(left + " " + right);
  }
  corpus::WriteLines(lines, path);
}

BpeModel LoadBpeModel(const std::string& path) {
  std::vector<std::string> lines = corpus::ReadLines(path);
  if (lines.empty())
    throw FormatError("bpe: model file " + path + " is empty");
  std::vector<std::string> header = text::SplitWhitespace(lines[0]);
  if (header.size() != 4 || header[0] != kModelMagic ||
      header[1] != kModelVersion || header[2].rfind("eow:", 0) != 0 ||
      header[3].rfind("cont:", 0) != 0)
    throw FormatError("bpe: bad model header in " + path);
  BpeModel model;
  model.end_of_word_marker = header[2].substr(4);
  model.continuation_marker = header[3].substr(5);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = text::SplitWhitespace(lines[i]);
    if (fields.size() != 2)
      throw FormatError("bpe: bad merge rule at " + path + ":" +
                        std::to_string(i + 1));
    model.merges.emplace_back(std::move(fields[0]), std::move(fields[1]));
  }
  return model;
}

}  // namespace bpe
}  // namespace mtkit
