// src/pipeline.cc

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

#include "mtkit/pipeline.h"

#include <unordered_map>

#include "mtkit/error.h"
#include "mtkit/subprocess.h"
#include "mtkit/text.h"

namespace mtkit {
namespace pipeline {

namespace {

std::string SubstitutePlaceholder(std::string text, const std::string& key,
                                  const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

corpus::Monotext TokenizeLines(const std::vector<std::string>& lines,
                               const corpus::TokenizerConfig& config) {
  corpus::Monotext out;
  out.sentences.reserve(lines.size());
  for (const std::string& line : lines)
    out.sentences.push_back(corpus::Tokenize(line, config));
  return out;
}

corpus::Monotext TranslateExternal(const corpus::Monotext& input,
                                   const TranslatorSpec& spec,
                                   const corpus::TokenizerConfig& config) {
  if (spec.command_template.find("{input}") == std::string::npos ||
      spec.command_template.find("{output}") == std::string::npos)
    throw FormatError(
        "external translator command must contain {input} and {output} "
        "placeholders: " +
        spec.command_template);

  subprocess::TempDir tmp;
  const std::size_t batch = std::max<std::size_t>(1, spec.batch_size);
  std::vector<std::string> translated;
  translated.reserve(input.sentences.size());

  for (std::size_t begin = 0, batch_id = 0; begin < input.sentences.size();
       begin += batch, ++batch_id) {
    const std::size_t end =
        std::min(begin + batch, input.sentences.size());
    std::vector<std::string> lines;
    lines.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i)
      lines.push_back(input.sentences[i].raw);

    const std::string in_path =
        tmp.File("batch-" + std::to_string(batch_id) + ".in");
    const std::string out_path =
        tmp.File("batch-" + std::to_string(batch_id) + ".out");
    corpus::WriteLines(lines, in_path);

    std::string command = SubstitutePlaceholder(spec.command_template,
                                                "{input}", in_path);
    command = SubstitutePlaceholder(command, "{output}", out_path);
    subprocess::CommandResult result =
        subprocess::RunCommand(command, spec.timeout_seconds);
    if (result.exit_status != 0)
      throw ExternalCommandError(
          "translator command exited with status " +
          std::to_string(result.exit_status) + ": " + command +
          (result.output_tail.empty() ? ""
                                      : "\n--- command output ---\n" +
                                            result.output_tail));

    std::vector<std::string> out_lines = corpus::ReadLines(out_path);
    if (out_lines.size() != lines.size())
      throw ContractError("translator contract violation: sent " +
                          std::to_string(lines.size()) + " lines, received " +
                          std::to_string(out_lines.size()) + " (batch " +
                          std::to_string(batch_id) + ")");
    for (std::string& line : out_lines)
      translated.push_back(std::move(line));
  }
  return TokenizeLines(translated, config);
}

corpus::Monotext TranslateDictionary(const corpus::Monotext& input,
                                     const TranslatorSpec& spec) {
  std::unordered_map<std::string, std::string> lexicon;
  std::vector<std::string> lines = corpus::ReadLines(spec.dictionary_path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::string> fields = text::SplitWhitespace(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() != 2)
      throw FormatError("bad lexicon entry at " + spec.dictionary_path + ":" +
                        std::to_string(i + 1) +
                        " (expected 'source target')");
    lexicon[fields[0]] = fields[1];
  }
  corpus::Monotext out;
  out.sentences.reserve(input.sentences.size());
  for (const corpus::Sentence& s : input.sentences) {
    std::vector<std::string> mapped;
    mapped.reserve(s.tokens.size());
    for (const std::string& t : s.tokens) {
      auto it = lexicon.find(t);
      mapped.push_back(it == lexicon.end() ? t : it->second);
    }
    out.sentences.push_back(corpus::SentenceFromTokens(std::move(mapped)));
  }
  return out;
}

}  // namespace

corpus::Monotext Translate(const corpus::Monotext& input,
                           const TranslatorSpec& translator,
                           const corpus::TokenizerConfig& config) {
  switch (translator.kind) {
    case TranslatorKind::kIdentityMock:
      return input;
    case TranslatorKind::kPretranslatedFile: {
      std::vector<std::string> lines =
          corpus::ReadLines(translator.file_path);
      if (lines.size() != input.sentences.size())
        throw ContractError("pretranslated file " + translator.file_path +
                            " has " + std::to_string(lines.size()) +
                            " lines for " +
                            std::to_string(input.sentences.size()) +
                            " input lines");
      return TokenizeLines(lines, config);
    }
    case TranslatorKind::kDictionaryMock:
      return TranslateDictionary(input, translator);
    case TranslatorKind::kExternalCommand:
      return TranslateExternal(input, translator, config);
  }
  throw Error("translate: unknown translator kind");
}

void Validate(const RatioFilterConfig& config) {
  if (!(config.lower > 0.0) || !(config.lower < config.upper))
    throw UsageError("ratio filter requires 0 < lower < upper");
}

std::pair<corpus::Bitext, RatioFilterStats> RatioFilter(
    const corpus::Bitext& bitext, const RatioFilterConfig& config) {
  Validate(config);
  corpus::Bitext kept;
  RatioFilterStats stats;
  stats.input = bitext.pairs.size();
  for (const corpus::SentencePair& pair : bitext.pairs) {
    const std::size_t src_len = pair.source.tokens.size();
    const std::size_t tgt_len = pair.target.tokens.size();
    if (tgt_len == 0) {
      ++stats.removed;
      ++stats.removed_empty_target;
      continue;
    }
    const double ratio = double(src_len) / double(tgt_len);
    if (ratio > config.lower && ratio < config.upper) {
      kept.pairs.push_back(pair);
      ++stats.kept;
    } else {
      ++stats.removed;
    }
  }
  return {std::move(kept), stats};
}

std::pair<corpus::Bitext, HybridBuildReport> BuildHybrid(
    const corpus::Bitext& authentic, const TranslatorSpec& back_translator,
    const RatioFilterConfig& filter, const corpus::TokenizerConfig& config) {
  Validate(filter);
  if (authentic.pairs.empty())
    throw Error("build-hybrid: authentic corpus is empty");

  corpus::Monotext targets;
  targets.sentences.reserve(authentic.pairs.size());
  for (const corpus::SentencePair& pair : authentic.pairs)
    targets.sentences.push_back(pair.target);

  corpus::Monotext back = Translate(targets, back_translator, config);

  corpus::Bitext synthetic;
  synthetic.pairs.reserve(authentic.pairs.size());
  for (std::size_t i = 0; i < authentic.pairs.size(); ++i) {
    corpus::SentencePair pair;
    pair.source = back.sentences[i];
    pair.target = authentic.pairs[i].target;
    pair.origin = corpus::Origin::kSynthetic;
    synthetic.pairs.push_back(std::move(pair));
  }

  auto [authentic_kept, authentic_stats] = RatioFilter(authentic, filter);
  auto [synthetic_kept, synthetic_stats] = RatioFilter(synthetic, filter);

  HybridBuildReport report;
  report.authentic_in = authentic.pairs.size();
  report.synthetic_in = synthetic.pairs.size();
  report.authentic_removed = authentic_stats.removed;
  report.synthetic_removed = synthetic_stats.removed;
  report.total_out = authentic_kept.pairs.size() + synthetic_kept.pairs.size();

  corpus::Bitext hybrid = std::move(authentic_kept);
  hybrid.pairs.insert(hybrid.pairs.end(),
                      std::make_move_iterator(synthetic_kept.pairs.begin()),
                      std::make_move_iterator(synthetic_kept.pairs.end()));
  return {std::move(hybrid), report};
}

namespace {

template <typename Fn>
auto RunPhase(const char* phase, Fn&& fn) {
  try {
    return fn();
  } catch (const ExternalCommandError& e) {
    throw ExternalCommandError(std::string("adapt: ") + phase + ": " +
                               e.what());
  } catch (const ContractError& e) {
    throw ContractError(std::string("adapt: ") + phase + ": " + e.what());
  } catch (const Error& e) {
    throw Error(std::string("adapt: ") + phase + ": " + e.what());
  }
}

}  // namespace

AdaptationResult AdaptToTest(const AdaptationPlan& plan,
                             const corpus::TokenizerConfig& config,
                             std::size_t num_threads) {
  fda::Validate(plan.fda_config);

  // Phase 1: approximate translation of the test set; this is the seed.
  corpus::Monotext seed = RunPhase("test-set pre-translation", [&] {
    return Translate(plan.test_source, plan.forward_translator, config);
  });

  // Phase 2: feature-decay selection from the monolingual pool.
  fda::SelectionResult selection = RunPhase("data selection", [&] {
    fda::SeedProfile profile = fda::BuildSeedProfile(seed, plan.fda_config);
    return fda::Select(plan.mono_pool, profile, plan.fda_config, num_threads);
  });

  corpus::Monotext selected;
  selected.sentences.reserve(selection.indices().size());
  for (std::size_t idx : selection.indices())
    selected.sentences.push_back(plan.mono_pool.sentences[idx]);

  // Phase 3: back-translate the selection into a synthetic parallel corpus.
  corpus::Monotext back = RunPhase("back-translation", [&] {
    return Translate(selected, plan.back_translator, config);
  });

  AdaptationResult result;
  result.selected_indices = selection.indices();
  result.truncated = selection.truncated;
  result.fine_tune_corpus.pairs.reserve(selected.sentences.size());
  for (std::size_t i = 0; i < selected.sentences.size(); ++i) {
    corpus::SentencePair pair;
    pair.source = back.sentences[i];
    pair.target = selected.sentences[i];
    pair.origin = corpus::Origin::kSynthetic;
    result.fine_tune_corpus.pairs.push_back(std::move(pair));
  }
  return result;
}

void RunFineTuneHook(const std::string& command_template,
                     const std::string& source_path,
                     const std::string& target_path, double timeout_seconds) {
  std::string command =
      SubstitutePlaceholder(command_template, "{source}", source_path);
  command = SubstitutePlaceholder(command, "{target}", target_path);
  subprocess::CommandResult result =
      subprocess::RunCommand(command, timeout_seconds);
  if (result.exit_status != 0)
    throw ExternalCommandError(
        "fine-tune command exited with status " +
        std::to_string(result.exit_status) + ": " + command +
        (result.output_tail.empty()
             ? ""
             : "\n--- command output ---\n" + result.output_tail));
}

}  // namespace pipeline
}  // namespace mtkit
