// src/cli.cc

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

#include "mtkit/cli.h"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtkit/bpe.h"
#include "mtkit/corpus.h"
#include "mtkit/error.h"
#include "mtkit/fda.h"
#include "mtkit/manifest.h"
#include "mtkit/metrics.h"
#include "mtkit/pipeline.h"
#include "mtkit/version.h"

namespace mtkit {
namespace cli {

namespace {

struct GlobalOptions {
  bool lowercase = false;
  std::string normalization = "nfc";
  std::uint64_t rng_seed = 12345;
  unsigned threads = 1;
  std::string manifest_path;

  corpus::TokenizerConfig Tokenizer() const {
    corpus::TokenizerConfig config;
    config.lowercase = lowercase;
    config.normalization = normalization == "none"
                               ? corpus::UnicodeNormalization::kNone
                               : corpus::UnicodeNormalization::kNfc;
    return config;
  }

  // Explicit --manifest-path wins; otherwise the manifest sits next to the
  // subcommand's primary output.
  std::string ManifestPathFor(const std::string& primary_output) const {
    if (!manifest_path.empty()) return manifest_path;
    if (primary_output.empty() || primary_output == "-") return "";
    return primary_output + ".manifest.json";
  }

  void AddCommonConfig(pipeline::Manifest* manifest) const {
    manifest->AddConfig("lowercase", lowercase);
    manifest->AddConfig("normalization", normalization);
  }
};

std::string Fmt(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

void Emit(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

// ---------------------------------------------------------------------------
// Translator flag group (shared by build-hybrid and adapt).

struct TranslatorFlags {
  std::string command;
  std::string file;
  std::string dictionary;
  bool identity = false;
  double timeout = 0.0;
  unsigned batch_size = 10000;
};

void AddTranslatorFlags(CLI::App* cmd, const std::string& prefix,
                        const std::string& role, TranslatorFlags* flags) {
  cmd->add_option("--" + prefix + "-command", flags->command,
                  role + ": shell command with {input} and {output} "
                         "placeholders");
  cmd->add_option("--" + prefix + "-file", flags->file,
                  role + ": pretranslated file, aligned line-for-line");
  cmd->add_flag("--" + prefix + "-identity", flags->identity,
                role + ": identity mock (echoes input)");
  cmd->add_option("--" + prefix + "-dictionary", flags->dictionary,
                  role + ": token lexicon file ('source target' per line)");
  cmd->add_option("--" + prefix + "-timeout", flags->timeout,
                  role + ": seconds per external call, 0 disables")
      ->capture_default_str();
  cmd->add_option("--" + prefix + "-batch-size", flags->batch_size,
                  role + ": lines per external-command invocation")
      ->capture_default_str();
}

pipeline::TranslatorSpec ToSpec(const TranslatorFlags& flags,
                                const std::string& prefix) {
  const int kinds = int(!flags.command.empty()) + int(!flags.file.empty()) +
                    int(flags.identity) + int(!flags.dictionary.empty());
  if (kinds != 1)
    throw UsageError("specify exactly one of --" + prefix + "-command, --" +
                     prefix + "-file, --" + prefix + "-identity, --" + prefix +
                     "-dictionary");
  pipeline::TranslatorSpec spec;
  spec.timeout_seconds = flags.timeout;
  spec.batch_size = flags.batch_size;
  if (!flags.command.empty()) {
    spec.kind = pipeline::TranslatorKind::kExternalCommand;
    spec.command_template = flags.command;
  } else if (!flags.file.empty()) {
    spec.kind = pipeline::TranslatorKind::kPretranslatedFile;
    spec.file_path = flags.file;
  } else if (!flags.dictionary.empty()) {
    spec.kind = pipeline::TranslatorKind::kDictionaryMock;
    spec.dictionary_path = flags.dictionary;
  } else {
    spec.kind = pipeline::TranslatorKind::kIdentityMock;
  }
  return spec;
}

void DescribeTranslator(pipeline::Manifest* manifest,
                        const std::string& prefix,
                        const TranslatorFlags& flags) {
  if (!flags.command.empty())
    manifest->AddConfig(prefix + "_command", flags.command);
  else if (!flags.file.empty())
    manifest->AddConfig(prefix + "_file", flags.file);
  else if (!flags.dictionary.empty())
    manifest->AddConfig(prefix + "_dictionary", flags.dictionary);
  else
    manifest->AddConfig(prefix + "_identity", true);
}

// ---------------------------------------------------------------------------
// Subcommand option structs.

struct FdaSelectOptions {
  std::string seed_path;
  std::string pool_path;
  std::string out_path;
  std::string indices_path;
  unsigned long long size = 0;
  int order = 3;
  double decay = 0.5;
};

struct FilterRatioOptions {
  std::string src_path, tgt_path, out_src, out_tgt;
  double lower = 0.5, upper = 1.5;
};

struct BuildHybridOptions {
  std::string src_path, tgt_path, out_src, out_tgt, origin_out;
  double lower = 0.5, upper = 1.5;
  TranslatorFlags back;
};

struct BpeLearnOptions {
  std::vector<std::string> inputs;
  std::string model_path;
  unsigned long long merges = 0;
};

struct BpeApplyOptions {
  std::string input_path, model_path, output_path;
};

struct EvaluateOptions {
  std::string hyp_path, ref_path;
};

struct SignificanceOptions {
  std::string baseline_path, system_path, ref_path;
  std::string metric = "bleu";
  unsigned long long resamples = 1000;
};

struct AdaptOptions {
  std::string test_path, pool_path, out_src, out_tgt, indices_path;
  unsigned long long size = 50000;
  int order = 3;
  double decay = 0.5;
  TranslatorFlags forward, back;
  std::string fine_tune_cmd;
  double fine_tune_timeout = 0.0;
};

// ---------------------------------------------------------------------------
// Handlers.

int RunFdaSelect(const GlobalOptions& global, const FdaSelectOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  corpus::Monotext seed = corpus::LoadMonotext(opt.seed_path, tok);
  corpus::Monotext pool = corpus::LoadMonotext(opt.pool_path, tok);

  fda::FdaConfig config;
  config.max_order = opt.order;
  config.decay_base = opt.decay;
  config.selection_size = std::size_t(opt.size);

  fda::SeedProfile profile = fda::BuildSeedProfile(seed, config);
  fda::SelectionResult result =
      fda::Select(pool, profile, config, global.threads);

  std::vector<std::string> selected_lines, index_lines;
  selected_lines.reserve(result.indices().size());
  for (std::size_t idx : result.indices()) {
    selected_lines.push_back(pool.sentences[idx].raw);
    index_lines.push_back(std::to_string(idx));
  }
  corpus::WriteLines(selected_lines, opt.out_path);
  if (!opt.indices_path.empty())
    corpus::WriteLines(index_lines, opt.indices_path);

  if (result.truncated)
    std::cerr << "warning: selection size " << opt.size
              << " exceeds pool size " << pool.size()
              << "; selected the whole pool\n";
  Emit("selected", std::to_string(result.indices().size()));
  Emit("truncated", result.truncated ? "1" : "0");

  const std::string manifest_path = global.ManifestPathFor(opt.out_path);
  if (!manifest_path.empty()) {
    pipeline::Manifest manifest("fda-select");
    global.AddCommonConfig(&manifest);
    manifest.AddConfig("order", opt.order);
    manifest.AddConfig("decay", opt.decay);
    manifest.AddConfig("size", opt.size);
    manifest.AddInput("seed", opt.seed_path, seed.size());
    manifest.AddInput("pool", opt.pool_path, pool.size());
    manifest.AddOutput("selected", opt.out_path, selected_lines.size());
    if (!opt.indices_path.empty())
      manifest.AddOutput("indices", opt.indices_path, index_lines.size());
    manifest.AddCount("selected", result.indices().size());
    manifest.AddCount("truncated", result.truncated ? 1 : 0);
    manifest.Write(manifest_path);
  }
  return 0;
}

int RunFilterRatio(const GlobalOptions& global,
                   const FilterRatioOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  corpus::Bitext bitext = corpus::LoadBitext(opt.src_path, opt.tgt_path, tok);

  pipeline::RatioFilterConfig config;
  config.lower = opt.lower;
  config.upper = opt.upper;
  auto [kept, stats] = pipeline::RatioFilter(bitext, config);
  corpus::SaveBitext(kept, opt.out_src, opt.out_tgt);

  Emit("input", std::to_string(stats.input));
  Emit("kept", std::to_string(stats.kept));
  Emit("removed", std::to_string(stats.removed));
  Emit("removed_empty_target", std::to_string(stats.removed_empty_target));

  const std::string manifest_path = global.ManifestPathFor(opt.out_src);
  if (!manifest_path.empty()) {
    pipeline::Manifest manifest("filter-ratio");
    global.AddCommonConfig(&manifest);
    manifest.AddConfig("lower", opt.lower);
    manifest.AddConfig("upper", opt.upper);
    manifest.AddInput("source", opt.src_path, bitext.size());
    manifest.AddInput("target", opt.tgt_path, bitext.size());
    manifest.AddOutput("source", opt.out_src, kept.size());
    manifest.AddOutput("target", opt.out_tgt, kept.size());
    manifest.AddCount("input", stats.input);
    manifest.AddCount("kept", stats.kept);
    manifest.AddCount("removed", stats.removed);
    manifest.AddCount("removed_empty_target", stats.removed_empty_target);
    manifest.Write(manifest_path);
  }
  return 0;
}

int RunBuildHybrid(const GlobalOptions& global,
                   const BuildHybridOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  corpus::Bitext authentic =
      corpus::LoadBitext(opt.src_path, opt.tgt_path, tok);

  pipeline::RatioFilterConfig filter;
  filter.lower = opt.lower;
  filter.upper = opt.upper;
  pipeline::TranslatorSpec back = ToSpec(opt.back, "bt");

  auto [hybrid, report] = pipeline::BuildHybrid(authentic, back, filter, tok);
  corpus::SaveBitext(hybrid, opt.out_src, opt.out_tgt);
  if (!opt.origin_out.empty()) {
    std::vector<std::string> origins;
    origins.reserve(hybrid.size());
    for (const corpus::SentencePair& pair : hybrid.pairs)
      origins.push_back(pair.origin == corpus::Origin::kAuthentic
                            ? "authentic"
                            : "synthetic");
    corpus::WriteLines(origins, opt.origin_out);
  }

  Emit("authentic_in", std::to_string(report.authentic_in));
  Emit("synthetic_in", std::to_string(report.synthetic_in));
  Emit("authentic_removed", std::to_string(report.authentic_removed));
  Emit("synthetic_removed", std::to_string(report.synthetic_removed));
  Emit("total_out", std::to_string(report.total_out));

  const std::string manifest_path = global.ManifestPathFor(opt.out_src);
  if (!manifest_path.empty()) {
    pipeline::Manifest manifest("build-hybrid");
    global.AddCommonConfig(&manifest);
    manifest.AddConfig("lower", opt.lower);
    manifest.AddConfig("upper", opt.upper);
    DescribeTranslator(&manifest, "bt", opt.back);
    manifest.AddInput("source", opt.src_path, authentic.size());
    manifest.AddInput("target", opt.tgt_path, authentic.size());
    manifest.AddOutput("source", opt.out_src, hybrid.size());
    manifest.AddOutput("target", opt.out_tgt, hybrid.size());
    if (!opt.origin_out.empty())
      manifest.AddOutput("origin", opt.origin_out, hybrid.size());
    manifest.AddCount("authentic_in", report.authentic_in);
    manifest.AddCount("synthetic_in", report.synthetic_in);
    manifest.AddCount("authentic_removed", report.authentic_removed);
    manifest.AddCount("synthetic_removed", report.synthetic_removed);
    manifest.AddCount("total_out", report.total_out);
    manifest.Write(manifest_path);
  }
  return 0;
}

int RunBpeLearn(const GlobalOptions& global, const BpeLearnOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  corpus::Monotext corpus_text;
  std::vector<std::size_t> input_sizes;
  for (const std::string& path : opt.inputs) {
    corpus::Monotext part = corpus::LoadMonotext(path, tok);
    input_sizes.push_back(part.size());
    corpus_text.sentences.insert(corpus_text.sentences.end(),
                                 std::make_move_iterator(
                                     part.sentences.begin()),
                                 std::make_move_iterator(part.sentences.end()));
  }
  bpe::BpeModel model = bpe::LearnBpe(corpus_text, std::size_t(opt.merges));
  bpe::SaveBpeModel(model, opt.model_path);
  Emit("merges_learned", std::to_string(model.merges.size()));

  const std::string manifest_path = global.ManifestPathFor(opt.model_path);
  if (!manifest_path.empty()) {
    pipeline::Manifest manifest("bpe-learn");
    global.AddCommonConfig(&manifest);
    manifest.AddConfig("merges", opt.merges);
    for (std::size_t i = 0; i < opt.inputs.size(); ++i)
      manifest.AddInput("input", opt.inputs[i], input_sizes[i]);
    manifest.AddOutput("model", opt.model_path, model.merges.size() + 1);
    manifest.AddCount("merges_learned", model.merges.size());
    manifest.Write(manifest_path);
  }
  return 0;
}

int RunBpeApply(const GlobalOptions& global, const BpeApplyOptions& opt,
                bool decode) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  bpe::BpeModel model = bpe::LoadBpeModel(opt.model_path);
  bpe::BpeCodec codec(model);
  corpus::Monotext input = corpus::LoadMonotext(opt.input_path, tok);
  corpus::Monotext output;
  output.sentences.reserve(input.size());
  for (const corpus::Sentence& s : input.sentences)
    output.sentences.push_back(decode ? codec.Decode(s) : codec.Apply(s));
  corpus::SaveMonotext(output, opt.output_path);
  Emit("sentences", std::to_string(output.size()));

  const std::string manifest_path = global.ManifestPathFor(opt.output_path);
  if (!manifest_path.empty()) {
    pipeline::Manifest manifest(decode ? "bpe-decode" : "bpe-apply");
    global.AddCommonConfig(&manifest);
    manifest.AddInput("input", opt.input_path, input.size());
    manifest.AddInput("model", opt.model_path, model.merges.size() + 1);
    manifest.AddOutput("output", opt.output_path, output.size());
    manifest.AddCount("sentences", output.size());
    manifest.Write(manifest_path);
  }
  return 0;
}

int RunEvaluate(const GlobalOptions& global, const EvaluateOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  corpus::Monotext hyp = corpus::LoadMonotext(opt.hyp_path, tok);
  corpus::Monotext ref = corpus::LoadMonotext(opt.ref_path, tok);
  std::vector<metrics::EvalPair> pairs = metrics::MakeEvalPairs(hyp, ref);
  metrics::EvalReport report = metrics::Evaluate(pairs);

  Emit("bleu", Fmt(report.bleu, 4));
  Emit("nist", Fmt(report.nist, 3));
  Emit("ter", Fmt(report.ter, 4));
  Emit("chrf3", Fmt(report.chrf3, 2));
  Emit("chrf1", Fmt(report.chrf1, 2));
  Emit("segments", std::to_string(report.segment_count));

  std::fprintf(stderr, "%-8s %s\n", "metric", "score");
  std::fprintf(stderr, "%-8s %s\n", "BLEU", Fmt(report.bleu, 4).c_str());
  std::fprintf(stderr, "%-8s %s\n", "NIST", Fmt(report.nist, 3).c_str());
  std::fprintf(stderr, "%-8s %s\n", "TER", Fmt(report.ter, 4).c_str());
  std::fprintf(stderr, "%-8s %s\n", "CHRF3", Fmt(report.chrf3, 2).c_str());
  std::fprintf(stderr, "%-8s %s\n", "CHRF1", Fmt(report.chrf1, 2).c_str());

  if (!global.manifest_path.empty()) {
    pipeline::Manifest manifest("evaluate");
    global.AddCommonConfig(&manifest);
    manifest.AddInput("hypothesis", opt.hyp_path, hyp.size());
    manifest.AddInput("reference", opt.ref_path, ref.size());
    manifest.AddCount("segments", report.segment_count);
    manifest.AddConfig("bleu", Fmt(report.bleu, 4));
    manifest.AddConfig("nist", Fmt(report.nist, 3));
    manifest.AddConfig("ter", Fmt(report.ter, 4));
    manifest.AddConfig("chrf3", Fmt(report.chrf3, 2));
    manifest.AddConfig("chrf1", Fmt(report.chrf1, 2));
    manifest.Write(global.manifest_path);
  }
  return 0;
}

int RunSignificance(const GlobalOptions& global,
                    const SignificanceOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();
  corpus::Monotext baseline = corpus::LoadMonotext(opt.baseline_path, tok);
  corpus::Monotext system = corpus::LoadMonotext(opt.system_path, tok);
  corpus::Monotext ref = corpus::LoadMonotext(opt.ref_path, tok);

  std::vector<metrics::EvalPair> baseline_pairs =
      metrics::MakeEvalPairs(baseline, ref);
  std::vector<metrics::EvalPair> system_pairs =
      metrics::MakeEvalPairs(system, ref);

  metrics::Metric metric = metrics::ParseMetric(opt.metric);
  metrics::SignificanceResult result = metrics::BootstrapSignificance(
      baseline_pairs, system_pairs, metric, std::size_t(opt.resamples),
      global.rng_seed, global.threads);

  Emit("metric", metrics::MetricName(result.metric));
  Emit("delta", Fmt(result.delta, 6));
  Emit("p_value", Fmt(result.p_value, 4));
  Emit("resamples", std::to_string(result.resamples));

  if (!global.manifest_path.empty()) {
    pipeline::Manifest manifest("significance");
    global.AddCommonConfig(&manifest);
    manifest.AddConfig("metric", metrics::MetricName(result.metric));
    manifest.AddConfig("resamples", opt.resamples);
    manifest.AddConfig("rng_seed", global.rng_seed);
    manifest.AddInput("baseline", opt.baseline_path, baseline.size());
    manifest.AddInput("system", opt.system_path, system.size());
    manifest.AddInput("reference", opt.ref_path, ref.size());
    manifest.AddConfig("delta", Fmt(result.delta, 6));
    manifest.AddConfig("p_value", Fmt(result.p_value, 4));
    manifest.Write(global.manifest_path);
  }
  return 0;
}

int RunAdapt(const GlobalOptions& global, const AdaptOptions& opt) {
  const corpus::TokenizerConfig tok = global.Tokenizer();

  pipeline::AdaptationPlan plan;
  plan.test_source = corpus::LoadMonotext(opt.test_path, tok);
  plan.mono_pool = corpus::LoadMonotext(opt.pool_path, tok);
  plan.fda_config.max_order = opt.order;
  plan.fda_config.decay_base = opt.decay;
  plan.fda_config.selection_size = std::size_t(opt.size);
  plan.forward_translator = ToSpec(opt.forward, "fw");
  plan.back_translator = ToSpec(opt.back, "bt");

  pipeline::AdaptationResult result =
      pipeline::AdaptToTest(plan, tok, global.threads);
  corpus::SaveBitext(result.fine_tune_corpus, opt.out_src, opt.out_tgt);
  if (!opt.indices_path.empty()) {
    std::vector<std::string> index_lines;
    index_lines.reserve(result.selected_indices.size());
    for (std::size_t idx : result.selected_indices)
      index_lines.push_back(std::to_string(idx));
    corpus::WriteLines(index_lines, opt.indices_path);
  }
  if (result.truncated)
    std::cerr << "warning: selection size " << opt.size
              << " exceeds pool size " << plan.mono_pool.size()
              << "; selected the whole pool\n";

  if (!opt.fine_tune_cmd.empty())
    pipeline::RunFineTuneHook(opt.fine_tune_cmd, opt.out_src, opt.out_tgt,
                              opt.fine_tune_timeout);

  Emit("pairs", std::to_string(result.fine_tune_corpus.size()));
  Emit("truncated", result.truncated ? "1" : "0");

  const std::string manifest_path = global.ManifestPathFor(opt.out_src);
  if (!manifest_path.empty()) {
    pipeline::Manifest manifest("adapt");
    global.AddCommonConfig(&manifest);
    manifest.AddConfig("order", opt.order);
    manifest.AddConfig("decay", opt.decay);
    manifest.AddConfig("size", opt.size);
    DescribeTranslator(&manifest, "fw", opt.forward);
    DescribeTranslator(&manifest, "bt", opt.back);
    if (!opt.fine_tune_cmd.empty())
      manifest.AddConfig("fine_tune_cmd", opt.fine_tune_cmd);
    manifest.AddInput("test", opt.test_path, plan.test_source.size());
    manifest.AddInput("pool", opt.pool_path, plan.mono_pool.size());
    manifest.AddOutput("source", opt.out_src,
                       result.fine_tune_corpus.size());
    manifest.AddOutput("target", opt.out_tgt,
                       result.fine_tune_corpus.size());
    if (!opt.indices_path.empty())
      manifest.AddOutput("indices", opt.indices_path,
                         result.selected_indices.size());
    manifest.AddCount("pairs", result.fine_tune_corpus.size());
    manifest.AddCount("truncated", result.truncated ? 1 : 0);
    manifest.Write(manifest_path);
  }
  return 0;
}

}  // namespace

int Run(int argc, const char* const* argv) {
  CLI::App app{
      "mtkit - data selection, filtering, subword and evaluation toolkit "
      "for machine translation pipelines",
      "mtkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GlobalOptions global;
  app.add_flag("--lowercase", global.lowercase,
               "lowercase text during tokenization");
  app.add_option("--normalization", global.normalization,
                 "unicode normalization applied before tokenizing")
      ->check(CLI::IsMember({"none", "nfc"}))
      ->capture_default_str();
  app.add_option("--seed", global.rng_seed, "random seed for resampling")
      ->capture_default_str();
  app.add_option("--threads", global.threads, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--manifest-path", global.manifest_path,
                 "where to write the run manifest (default: next to the "
                 "primary output)");

  // fda-select
  FdaSelectOptions fda_opt;
  CLI::App* fda_cmd = app.add_subcommand(
      "fda-select", "select pool sentences closest to a seed text, with "
                    "feature decay");
  fda_cmd->add_option("--seed", fda_opt.seed_path, "seed text file")
      ->required();
  fda_cmd->add_option("--pool", fda_opt.pool_path, "candidate pool file")
      ->required();
  fda_cmd->add_option("--out", fda_opt.out_path,
                      "selected sentences, in selection order")
      ->required();
  fda_cmd->add_option("--indices", fda_opt.indices_path,
                      "also write selected 0-based pool indices");
  fda_cmd->add_option("--size", fda_opt.size, "number of sentences to select")
      ->required();
  fda_cmd->add_option("--order", fda_opt.order, "maximum n-gram order")
      ->capture_default_str();
  fda_cmd->add_option("--decay", fda_opt.decay,
                      "per-occurrence feature decay factor, in (0,1)")
      ->capture_default_str();

  // filter-ratio
  FilterRatioOptions ratio_opt;
  CLI::App* ratio_cmd = app.add_subcommand(
      "filter-ratio",
      "drop bitext pairs whose token length ratio is out of bounds");
  ratio_cmd->add_option("--src", ratio_opt.src_path, "source-side file")
      ->required();
  ratio_cmd->add_option("--tgt", ratio_opt.tgt_path, "target-side file")
      ->required();
  ratio_cmd->add_option("--out-src", ratio_opt.out_src,
                        "surviving source side")
      ->required();
  ratio_cmd->add_option("--out-tgt", ratio_opt.out_tgt,
                        "surviving target side")
      ->required();
  ratio_cmd->add_option("--lower", ratio_opt.lower,
                        "keep pairs with ratio strictly above this")
      ->capture_default_str();
  ratio_cmd->add_option("--upper", ratio_opt.upper,
                        "keep pairs with ratio strictly below this")
      ->capture_default_str();

  // build-hybrid
  BuildHybridOptions hybrid_opt;
  CLI::App* hybrid_cmd = app.add_subcommand(
      "build-hybrid",
      "append a back-translated synthetic copy to an authentic corpus, "
      "ratio-filtering both");
  hybrid_cmd->add_option("--src", hybrid_opt.src_path, "authentic source side")
      ->required();
  hybrid_cmd->add_option("--tgt", hybrid_opt.tgt_path, "authentic target side")
      ->required();
  hybrid_cmd->add_option("--out-src", hybrid_opt.out_src,
                         "hybrid source side")
      ->required();
  hybrid_cmd->add_option("--out-tgt", hybrid_opt.out_tgt,
                         "hybrid target side")
      ->required();
  hybrid_cmd->add_option("--origin-out", hybrid_opt.origin_out,
                         "sidecar file tagging each output pair "
                         "authentic/synthetic");
  hybrid_cmd->add_option("--lower", hybrid_opt.lower,
                         "ratio filter lower bound")
      ->capture_default_str();
  hybrid_cmd->add_option("--upper", hybrid_opt.upper,
                         "ratio filter upper bound")
      ->capture_default_str();
  AddTranslatorFlags(hybrid_cmd, "bt", "back-translator", &hybrid_opt.back);

  // bpe-learn / bpe-apply / bpe-decode
  BpeLearnOptions learn_opt;
  CLI::App* learn_cmd = app.add_subcommand(
      "bpe-learn", "learn byte-pair merge rules from tokenized text");
  learn_cmd->add_option("--input", learn_opt.inputs,
                        "training text; several files are concatenated "
                        "(joint learning)")
      ->required();
  learn_cmd->add_option("--merges", learn_opt.merges,
                        "number of merge operations to learn")
      ->required();
  learn_cmd->add_option("--model", learn_opt.model_path, "model file to write")
      ->required();

  BpeApplyOptions apply_opt;
  CLI::App* apply_cmd =
      app.add_subcommand("bpe-apply", "segment text with a learned model");
  apply_cmd->add_option("--input", apply_opt.input_path, "text to segment")
      ->required();
  apply_cmd->add_option("--model", apply_opt.model_path, "model file")
      ->required();
  apply_cmd->add_option("--output", apply_opt.output_path, "segmented text")
      ->required();

  BpeApplyOptions decode_opt;
  CLI::App* decode_cmd = app.add_subcommand(
      "bpe-decode", "undo subword segmentation (join continuation markers)");
  decode_cmd->add_option("--input", decode_opt.input_path, "segmented text")
      ->required();
  decode_cmd->add_option("--model", decode_opt.model_path, "model file")
      ->required();
  decode_cmd->add_option("--output", decode_opt.output_path, "joined text")
      ->required();

  // evaluate
  EvaluateOptions eval_opt;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate",
      "score a hypothesis file against a reference (BLEU, NIST, TER, chrF)");
  eval_cmd->add_option("--hyp", eval_opt.hyp_path, "hypothesis file")
      ->required();
  eval_cmd->add_option("--ref", eval_opt.ref_path, "reference file")
      ->required();

  // significance
  SignificanceOptions sig_opt;
  CLI::App* sig_cmd = app.add_subcommand(
      "significance",
      "paired bootstrap resampling between two systems on one reference");
  sig_cmd->add_option("--baseline", sig_opt.baseline_path,
                      "baseline system output")
      ->required();
  sig_cmd->add_option("--system", sig_opt.system_path,
                      "contrast system output")
      ->required();
  sig_cmd->add_option("--ref", sig_opt.ref_path, "shared reference file")
      ->required();
  sig_cmd->add_option("--metric", sig_opt.metric,
                      "metric to resample")
      ->check(CLI::IsMember({"bleu", "nist", "ter", "chrf3", "chrf1"}))
      ->capture_default_str();
  sig_cmd->add_option("--resamples", sig_opt.resamples,
                      "bootstrap resamples")
      ->capture_default_str();

  // adapt
  AdaptOptions adapt_opt;
  CLI::App* adapt_cmd = app.add_subcommand(
      "adapt",
      "build a test-set-adapted fine-tuning corpus: pre-translate the test "
      "set, select the closest pool sentences, back-translate them");
  adapt_cmd->add_option("--test", adapt_opt.test_path,
                        "test set, source language")
      ->required();
  adapt_cmd->add_option("--pool", adapt_opt.pool_path,
                        "monolingual pool, target language")
      ->required();
  adapt_cmd->add_option("--out-src", adapt_opt.out_src,
                        "fine-tuning corpus source side")
      ->required();
  adapt_cmd->add_option("--out-tgt", adapt_opt.out_tgt,
                        "fine-tuning corpus target side")
      ->required();
  adapt_cmd->add_option("--indices", adapt_opt.indices_path,
                        "also write selected 0-based pool indices");
  adapt_cmd->add_option("--size", adapt_opt.size,
                        "number of pool sentences to select")
      ->capture_default_str();
  adapt_cmd->add_option("--order", adapt_opt.order, "maximum n-gram order")
      ->capture_default_str();
  adapt_cmd->add_option("--decay", adapt_opt.decay,
                        "per-occurrence feature decay factor, in (0,1)")
      ->capture_default_str();
  AddTranslatorFlags(adapt_cmd, "fw", "forward translator",
                     &adapt_opt.forward);
  AddTranslatorFlags(adapt_cmd, "bt", "back-translator", &adapt_opt.back);
  adapt_cmd->add_option("--fine-tune-cmd", adapt_opt.fine_tune_cmd,
                        "optional trainer hook run after emission, with "
                        "{source} and {target} placeholders");
  adapt_cmd->add_option("--fine-tune-timeout", adapt_opt.fine_tune_timeout,
                        "seconds for the trainer hook, 0 disables")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (fda_cmd->parsed()) return RunFdaSelect(global, fda_opt);
    if (ratio_cmd->parsed()) return RunFilterRatio(global, ratio_opt);
    if (hybrid_cmd->parsed()) return RunBuildHybrid(global, hybrid_opt);
    if (learn_cmd->parsed()) return RunBpeLearn(global, learn_opt);
    if (apply_cmd->parsed()) return RunBpeApply(global, apply_opt, false);
    if (decode_cmd->parsed()) return RunBpeApply(global, decode_opt, true);
    if (eval_cmd->parsed()) return RunEvaluate(global, eval_opt);
    if (sig_cmd->parsed()) return RunSignificance(global, sig_opt);
    if (adapt_cmd->parsed()) return RunAdapt(global, adapt_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ExternalCommandError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace cli
}  // namespace mtkit
