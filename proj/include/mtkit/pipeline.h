// include/mtkit/pipeline.h

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

#ifndef MTKIT_PIPELINE_H_
#define MTKIT_PIPELINE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mtkit/corpus.h"
#include "mtkit/fda.h"

namespace mtkit {
namespace pipeline {

// A pluggable translator. The contract is the same for every kind: N input
// lines produce exactly N output lines, order preserved.
//
//   kExternalCommand    runs command_template through the shell, with
//                       {input} and {output} replaced by file paths
//   kPretranslatedFile  returns the lines of file_path
//   kIdentityMock       echoes the input
//   kDictionaryMock     maps tokens through the lexicon at dictionary_path
//                       ("source target" per line); unknown tokens pass
//                       through unchanged
enum class TranslatorKind {
  kExternalCommand,
  kPretranslatedFile,
  kIdentityMock,
  kDictionaryMock
};

struct TranslatorSpec {
  TranslatorKind kind = TranslatorKind::kIdentityMock;
  std::string command_template;
  std::string file_path;
  std::string dictionary_path;
  double timeout_seconds = 0;      // per batch; 0 disables the timeout
  std::size_t batch_size = 10000;  // lines per external-command invocation
};

// Translates line i of the input to line i of the output. Contract
// violations (wrong line count) raise ContractError; a nonzero exit status
// or timeout of an external command raises ExternalCommandError with the
// command's captured diagnostics.
corpus::Monotext Translate(const corpus::Monotext& input,
                           const TranslatorSpec& translator,
                           const corpus::TokenizerConfig& config);

// Keep a pair only when lower < len(source)/len(target) < upper, lengths
// in tokens, bounds strict. Pairs with an empty target side are removed
// unconditionally (their ratio is undefined).
struct RatioFilterConfig {
  double lower = 0.5;
  double upper = 1.5;
};
void Validate(const RatioFilterConfig& config);  // throws UsageError

struct RatioFilterStats {
  std::size_t input = 0;
  std::size_t kept = 0;
  std::size_t removed = 0;               // includes empty-target removals
  std::size_t removed_empty_target = 0;
};

std::pair<corpus::Bitext, RatioFilterStats> RatioFilter(
    const corpus::Bitext& bitext, const RatioFilterConfig& config);

struct HybridBuildReport {
  std::size_t authentic_in = 0;
  std::size_t synthetic_in = 0;
  std::size_t authentic_removed = 0;
  std::size_t synthetic_removed = 0;
  std::size_t total_out = 0;
};

// Back-translates the target side into a synthetic source, filters the
// authentic and synthetic sets separately by length ratio, and emits their
// concatenation (authentic first). Target sides are deliberately
// duplicated between the two halves; origin tags tell them apart.
std::pair<corpus::Bitext, HybridBuildReport> BuildHybrid(
    const corpus::Bitext& authentic, const TranslatorSpec& back_translator,
    const RatioFilterConfig& filter, const corpus::TokenizerConfig& config);

// Test-set adaptation: pre-translate the test set to obtain a seed in the
// pool's language, select the closest pool sentences with feature-decay
// scoring, then back-translate the selection into a synthetic fine-tuning
// corpus whose target side is the selection in selection order.
struct AdaptationPlan {
  corpus::Monotext test_source;
  corpus::Monotext mono_pool;
  fda::FdaConfig fda_config;  // selection_size defaults to 50000 via the CLI
  TranslatorSpec forward_translator;
  TranslatorSpec back_translator;
};

struct AdaptationResult {
  corpus::Bitext fine_tune_corpus;
  std::vector<std::size_t> selected_indices;
  bool truncated = false;  // pool smaller than the requested selection
};

// Translator failures abort the run with the failing phase named in the
// error message. A pool smaller than selection_size proceeds with
// truncated=true.
AdaptationResult AdaptToTest(const AdaptationPlan& plan,
                             const corpus::TokenizerConfig& config,
                             std::size_t num_threads = 1);

// Optional trainer hook after corpus emission: {source} and {target} in
// the template are replaced with the emitted file paths.
void RunFineTuneHook(const std::string& command_template,
                     const std::string& source_path,
                     const std::string& target_path,
                     double timeout_seconds = 0);

}  // namespace pipeline
}  // namespace mtkit

#endif  // MTKIT_PIPELINE_H_
