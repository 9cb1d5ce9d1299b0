// Copyright 2026 The emojipred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMOJIPRED_PIPELINE_HPP_
#define EMOJIPRED_PIPELINE_HPP_

// End-to-end commands behind the `emojipred` tool. The order is fixed:
// label from raw text → clean → split → fit TF-IDF on train → train → eval.
// Every command is a pure function of its inputs and configuration, so reruns
// produce byte-identical files.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "emojipred/classifier.hpp"
#include "emojipred/corpus.hpp"
#include "emojipred/emoji.hpp"
#include "emojipred/metrics.hpp"
#include "emojipred/normalize.hpp"
#include "emojipred/provenance.hpp"

namespace emojipred::pipeline {

namespace fs = std::filesystem;

struct SplitOptions {
  std::optional<std::size_t> train_size;  // wins over train_fraction
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
  bool stratified = false;
};

struct FeatureOptions {
  // Re-apply clean_text before tokenizing (a no-op on cleaned input).
  bool clean_before_tokenize = true;
};

struct SynthOptions {
  std::string preset = "separable";  // separable | noisy
  std::size_t per_class = 100;
  double noise_rate = 0.5;  // noisy preset only
  std::size_t lexicon_size = 20;
  std::uint64_t seed = 42;
};

struct PipelineConfig {
  fs::path workdir = ".";
  fs::path label_map;  // empty: built-in table
  normalize::CleaningConfig cleaning;
  SplitOptions split;
  FeatureOptions features;
  classifier::TrainConfig train;
  SynthOptions synth;

  // Unknown keys are rejected.
  static PipelineConfig from_json(const nlohmann::json& j);
  static PipelineConfig load(const fs::path& path);
  nlohmann::ordered_json to_json() const;

  // Overrides every seed (split, train, synth).
  void set_seed(std::uint64_t seed);
  void validate() const;

  // Hash of the semantic settings. Paths are excluded; the label map
  // contributes its contents.
  std::string hash() const;

  const emoji::LabelMap& labels() const;

 private:
  mutable std::optional<emoji::LabelMap> loaded_map_;
};

struct CleanStats {
  corpus::CorpusStats corpus;
  std::size_t excluded_without_emoji = 0;
  std::size_t unmapped_emoji = 0;
  std::size_t records_out = 0;
};

// raw CSV → labeled, cleaned CSV (`id,text,emoji,label`) + stats JSON.
CleanStats run_clean(const PipelineConfig& config, const fs::path& input,
                     const fs::path& output, const fs::path& stats_json);

struct SplitSummary {
  std::size_t train = 0;
  std::size_t test = 0;
};

// labeled CSV → train CSV + test CSV + manifest JSON.
SplitSummary run_split(const PipelineConfig& config, const fs::path& input,
                       const fs::path& train_out, const fs::path& test_out,
                       const fs::path& manifest_json);

struct TrainPaths {
  fs::path model;
  fs::path features;
  fs::path log;
  fs::path summary;  // JSON: epoch-level losses and run shape
};

struct TrainOutcome {
  classifier::TrainLog log;
  std::size_t vocab_size = 0;
  bool degenerate = false;  // epochs == 0 or no steps
};

// Fits TF-IDF on the training file, trains, and writes model, feature file,
// step log and summary. `test_csv` may be empty; it supplies validation loss.
TrainOutcome run_train(const PipelineConfig& config, const fs::path& train_csv,
                       const fs::path& test_csv, const TrainPaths& out);

struct ReportPaths {
  fs::path text;
  fs::path json;
  fs::path examples;  // per-example prediction lines (eval only)
};

metrics::EvalReport run_eval(const PipelineConfig& config, const fs::path& model,
                             const fs::path& features, const fs::path& test_csv,
                             const ReportPaths& out);

metrics::EvalReport run_score_external(const PipelineConfig& config,
                                       const fs::path& predictions,
                                       const fs::path& test_csv,
                                       const ReportPaths& out);

// Writes a synthetic corpus. `spec_json` may be empty (use config.synth).
std::size_t run_synth(const PipelineConfig& config, const fs::path& spec_json,
                      const fs::path& output);

// Re-renders a report JSON as the text table.
std::string run_report(const fs::path& report_json, const fs::path& output);

// Report JSON round trip.
nlohmann::ordered_json report_to_json(const metrics::EvalReport& report,
                                      const emoji::LabelMap& map,
                                      const Provenance& provenance);
metrics::EvalReport report_from_json(const nlohmann::json& j);

corpus::SynthSpec synth_spec_from_json(const nlohmann::json& j);

}  // namespace emojipred::pipeline

#endif  // EMOJIPRED_PIPELINE_HPP_
