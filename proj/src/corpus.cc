// src/corpus.cc

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

#include "mtkit/corpus.h"

#include <fstream>
#include <iostream>

#include "mtkit/error.h"
#include "mtkit/text.h"

namespace mtkit {
namespace corpus {

Sentence SentenceFromTokens(std::vector<std::string> tokens) {
  Sentence s;
  std::string raw;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) raw.push_back(' ');
    raw += tokens[i];
  }
  s.raw = std::move(raw);
  s.tokens = std::move(tokens);
  return s;
}

Sentence Tokenize(std::string_view line, const TokenizerConfig& config) {
  if (line.find('\n') != std::string_view::npos)
    throw FormatError("tokenize input must be a single line");
  text::ValidateUtf8(line);

  Sentence s;
  s.raw.assign(line);

  if (text::IsAscii(line) && !config.lowercase) {
    s.tokens = text::SplitWhitespace(line);
    return s;
  }
  std::string transformed(line);
  if (config.normalization == UnicodeNormalization::kNfc)
    transformed = text::NormalizeNfc(transformed);
  if (config.lowercase) transformed = text::Lowercase(transformed);
  s.tokens = text::SplitWhitespace(transformed);
  return s;
}

NgramCounts ExtractNgrams(const Sentence& sentence, int max_order) {
  if (max_order < 1) throw Error("max_order must be >= 1");
  NgramCounts counts;
  const auto& toks = sentence.tokens;
  const std::size_t k = toks.size();
  Ngram scratch;
  for (std::size_t n = 1; n <= std::size_t(max_order) && n <= k; ++n) {
    for (std::size_t i = 0; i + n <= k; ++i) {
      scratch.tokens.assign(toks.begin() + i, toks.begin() + i + n);
      auto it = counts.find(scratch);
      if (it != counts.end())
        ++it->second;
      else
        counts.emplace(scratch, 1);
    }
  }
  return counts;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::vector<std::string> lines;
  auto read_stream = [&lines](std::istream& in) {
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  };
  if (path == "-") {
    read_stream(std::cin);
    return lines;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  read_stream(in);
  if (in.bad()) throw IoError("read failure on " + path);
  return lines;
}

void WriteLines(const std::vector<std::string>& lines,
                const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const std::string& line : lines) {
    out << line << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

namespace {

Sentence TokenizeFileLine(const std::string& line, const std::string& path,
                          std::size_t line_number,
                          const TokenizerConfig& config) {
  try {
    return Tokenize(line, config);
  } catch (const DecodeError& e) {
    throw DecodeError(path + ":" + std::to_string(line_number) + ": " +
                          e.what(),
                      e.byte_offset());
  }
}

}  // namespace

Monotext LoadMonotext(const std::string& path,
                      const TokenizerConfig& config) {
  std::vector<std::string> lines = ReadLines(path);
  Monotext mono;
  mono.sentences.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    mono.sentences.push_back(TokenizeFileLine(lines[i], path, i + 1, config));
  return mono;
}

Bitext LoadBitext(const std::string& source_path,
                  const std::string& target_path,
                  const TokenizerConfig& config) {
  if (source_path == "-" && target_path == "-")
    throw UsageError("only one side of a bitext may come from stdin");
  std::vector<std::string> src = ReadLines(source_path);
  std::vector<std::string> tgt = ReadLines(target_path);
  if (src.size() != tgt.size())
    throw AlignmentError("line-count mismatch: " + source_path + " has " +
                         std::to_string(src.size()) + " lines, " +
                         target_path + " has " + std::to_string(tgt.size()));
  Bitext bitext;
  bitext.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    SentencePair pair;
    pair.source = TokenizeFileLine(src[i], source_path, i + 1, config);
    pair.target = TokenizeFileLine(tgt[i], target_path, i + 1, config);
    pair.origin = Origin::kAuthentic;
    bitext.pairs.push_back(std::move(pair));
  }
  return bitext;
}

void SaveMonotext(const Monotext& mono, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(mono.sentences.size());
  for (const Sentence& s : mono.sentences) lines.push_back(s.raw);
  WriteLines(lines, path);
}

void SaveBitext(const Bitext& bitext, const std::string& source_path,
                const std::string& target_path) {
  std::vector<std::string> src, tgt;
  src.reserve(bitext.pairs.size());
  tgt.reserve(bitext.pairs.size());
  for (const SentencePair& p : bitext.pairs) {
    src.push_back(p.source.raw);
    tgt.push_back(p.target.raw);
  }
  WriteLines(src, source_path);
  WriteLines(tgt, target_path);
}

}  // namespace corpus
}  // namespace mtkit
