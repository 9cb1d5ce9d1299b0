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

#include "emojipred/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "emojipred/error.hpp"
#include "emojipred/features.hpp"
#include "emojipred/utf8.hpp"

namespace emojipred::pipeline {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_keys(const json& j, std::string_view section,
                std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(fmt::format("config section '{}' must be an object", section));
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) {
      throw ConfigError(fmt::format("unknown config key '{}{}{}'", section,
                                    section.empty() ? "" : ".", it.key()));
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
    }
  }
}

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const fs::path& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::string symbols_to_string(const std::vector<char32_t>& symbols) {
  return utf8::encode(std::u32string(symbols.begin(), symbols.end()));
}

std::string document_text(const PipelineConfig& config, const TweetRecord& r) {
  const std::string& text = r.clean_text ? *r.clean_text : r.raw_text;
  return config.features.clean_before_tokenize
             ? normalize::clean_text(text, config.cleaning)
             : text;
}

std::vector<TweetRecord> load_labeled(const PipelineConfig& config,
                                      const fs::path& path) {
  auto ingest = corpus::ingest_csv(path, config.labels().extraction_set());
  if (ingest.stats.malformed) {
    std::cerr << "warning: " << path.string() << ": skipped "
              << ingest.stats.malformed << " malformed row(s)\n";
  }
  for (const auto& r : ingest.records) {
    if (!r.label) {
      throw PreconditionError(fmt::format("{}: record '{}' has no label",
                                          path.string(), r.id));
    }
    if (static_cast<std::size_t>(*r.label) >= config.labels().size()) {
      throw BoundsError(fmt::format("{}: record '{}' has label {} outside 0..{}",
                                    path.string(), r.id, *r.label,
                                    config.labels().size() - 1));
    }
  }
  return std::move(ingest.records);
}

std::vector<classifier::Example> to_examples(const PipelineConfig& config,
                                             const features::TfidfModel& model,
                                             const std::vector<TweetRecord>& records) {
  std::vector<classifier::Example> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({features::transform(model, features::tokenize(document_text(config, r))),
                   *r.label});
  }
  return out;
}

Provenance provenance(const PipelineConfig& config, std::string command,
                      std::uint64_t seed) {
  return Provenance{std::move(command), config.hash(), seed};
}

void emit_report(const metrics::EvalReport& report, const emoji::LabelMap& map,
                 const Provenance& prov, const ReportPaths& out) {
  if (!out.text.empty()) {
    write_text(out.text, metrics::render_report(report) + "# " + prov.line() + "\n");
  }
  if (!out.json.empty()) write_json(out.json, report_to_json(report, map, prov));
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

PipelineConfig PipelineConfig::from_json(const json& j) {
  PipelineConfig c;
  check_keys(j, "", {"workdir", "label_map", "cleaning", "split", "features", "train",
                     "synth"});
  if (auto it = j.find("workdir"); it != j.end()) c.workdir = it->get<std::string>();
  if (auto it = j.find("label_map"); it != j.end()) c.label_map = it->get<std::string>();

  if (auto it = j.find("cleaning"); it != j.end()) {
    const json& s = *it;
    check_keys(s, "cleaning", {"remove_mentions", "remove_hashtags", "strip_symbols",
                               "collapse_ellipsis", "elongation_max_run",
                               "strip_unmapped_emoji"});
    read(s, "remove_mentions", c.cleaning.remove_mentions);
    read(s, "remove_hashtags", c.cleaning.remove_hashtags);
    read(s, "collapse_ellipsis", c.cleaning.collapse_ellipsis);
    read(s, "elongation_max_run", c.cleaning.elongation_max_run);
    read(s, "strip_unmapped_emoji", c.cleaning.strip_unmapped_emoji);
    if (s.contains("strip_symbols")) {
      std::string symbols;
      read(s, "strip_symbols", symbols);
      auto scalars = utf8::decode(symbols);
      c.cleaning.strip_symbols.assign(scalars.begin(), scalars.end());
    }
  }
  if (auto it = j.find("split"); it != j.end()) {
    const json& s = *it;
    check_keys(s, "split", {"train_size", "train_fraction", "seed", "stratified"});
    if (s.contains("train_size") && !s["train_size"].is_null()) {
      std::size_t n = 0;
      read(s, "train_size", n);
      c.split.train_size = n;
    }
    read(s, "train_fraction", c.split.train_fraction);
    read(s, "seed", c.split.seed);
    read(s, "stratified", c.split.stratified);
  }
  if (auto it = j.find("features"); it != j.end()) {
    check_keys(*it, "features", {"clean_before_tokenize"});
    read(*it, "clean_before_tokenize", c.features.clean_before_tokenize);
  }
  if (auto it = j.find("train"); it != j.end()) {
    const json& s = *it;
    check_keys(s, "train", {"initial_lr", "total_steps", "batch_size", "epochs", "l2",
                            "seed", "eval_each_epoch", "log_interval"});
    read(s, "initial_lr", c.train.initial_lr);
    read(s, "total_steps", c.train.total_steps);
    read(s, "batch_size", c.train.batch_size);
    read(s, "epochs", c.train.epochs);
    read(s, "l2", c.train.l2);
    read(s, "seed", c.train.seed);
    read(s, "eval_each_epoch", c.train.eval_each_epoch);
    read(s, "log_interval", c.train.log_interval);
  }
  if (auto it = j.find("synth"); it != j.end()) {
    const json& s = *it;
    check_keys(s, "synth", {"preset", "per_class", "noise_rate", "lexicon_size", "seed"});
    read(s, "preset", c.synth.preset);
    read(s, "per_class", c.synth.per_class);
    read(s, "noise_rate", c.synth.noise_rate);
    read(s, "lexicon_size", c.synth.lexicon_size);
    read(s, "seed", c.synth.seed);
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  PipelineConfig c = from_json(j);
  if (!c.label_map.empty() && c.label_map.is_relative()) {
    c.label_map = path.parent_path() / c.label_map;
  }
  return c;
}

ordered_json PipelineConfig::to_json() const {
  ordered_json j;
  j["workdir"] = workdir.string();
  j["label_map"] = label_map.string();
  j["cleaning"] = {
      {"remove_mentions", cleaning.remove_mentions},
      {"remove_hashtags", cleaning.remove_hashtags},
      {"strip_symbols", symbols_to_string(cleaning.strip_symbols)},
      {"collapse_ellipsis", cleaning.collapse_ellipsis},
      {"elongation_max_run", cleaning.elongation_max_run},
      {"strip_unmapped_emoji", cleaning.strip_unmapped_emoji},
  };
  j["split"] = {
      {"train_size", split.train_size ? ordered_json(*split.train_size) : ordered_json()},
      {"train_fraction", split.train_fraction},
      {"seed", split.seed},
      {"stratified", split.stratified},
  };
  j["features"] = {{"clean_before_tokenize", features.clean_before_tokenize}};
  j["train"] = {
      {"initial_lr", train.initial_lr},   {"total_steps", train.total_steps},
      {"batch_size", train.batch_size},   {"epochs", train.epochs},
      {"l2", train.l2},                   {"seed", train.seed},
      {"eval_each_epoch", train.eval_each_epoch},
      {"log_interval", train.log_interval},
  };
  j["synth"] = {
      {"preset", synth.preset},
      {"per_class", synth.per_class},
      {"noise_rate", synth.noise_rate},
      {"lexicon_size", synth.lexicon_size},
      {"seed", synth.seed},
  };
  return j;
}

void PipelineConfig::set_seed(std::uint64_t seed) {
  split.seed = seed;
  train.seed = seed;
  synth.seed = seed;
}

void PipelineConfig::validate() const {
  cleaning.validate();
  train.validate();
  if (!(split.train_fraction >= 0.0 && split.train_fraction <= 1.0)) {
    throw ConfigError("split.train_fraction must lie in [0, 1]");
  }
  if (synth.preset != "separable" && synth.preset != "noisy") {
    throw ConfigError("synth.preset must be 'separable' or 'noisy'");
  }
}

std::string PipelineConfig::hash() const {
  ordered_json j = to_json();
  j.erase("workdir");
  j.erase("label_map");
  std::ostringstream map_src;
  const auto& map = labels();
  for (const auto& c : map.categories()) map_src << c << '\n';
  for (char32_t e : map.mapped_scalars()) {
    map_src << static_cast<std::uint32_t>(e) << '\t' << *map.label_of(e) << '\n';
  }
  j["label_map_digest"] = fmt::format("{:016x}", fnv1a64(map_src.str()));
  return fmt::format("{:016x}", fnv1a64(j.dump()));
}

const emoji::LabelMap& PipelineConfig::labels() const {
  if (label_map.empty()) return emoji::LabelMap::builtin();
  if (!loaded_map_) loaded_map_ = emoji::LabelMap::load(label_map);
  return *loaded_map_;
}

// ---------------------------------------------------------------------------
// Commands

CleanStats run_clean(const PipelineConfig& config, const fs::path& input,
                     const fs::path& output, const fs::path& stats_json) {
  const auto& map = config.labels();
  auto ingest = corpus::ingest_csv(input, map.extraction_set());
  auto filtered = corpus::filter_emoji_bearing(ingest.records, map.extraction_set());
  auto labeled = emoji::label_records(filtered.kept, map);
  for (auto& r : labeled.labeled) {
    r.clean_text = normalize::clean_text(r.raw_text, config.cleaning);
  }

  CleanStats stats;
  stats.corpus = ingest.stats;
  stats.excluded_without_emoji = filtered.excluded;
  stats.unmapped_emoji = labeled.unmapped_emoji;
  stats.records_out = labeled.labeled.size();

  ensure_parent(output);
  corpus::write_csv(output, labeled.labeled);

  if (!stats_json.empty()) {
    ordered_json j;
    j["provenance"] = provenance(config, "clean", 0).json();
    j["total_ingested"] = stats.corpus.total_ingested;
    j["dropped_empty"] = stats.corpus.dropped_empty;
    j["malformed"] = stats.corpus.malformed;
    j["with_emoji"] = stats.corpus.with_emoji;
    j["without_emoji"] = stats.corpus.without_emoji;
    j["excluded_without_emoji"] = stats.excluded_without_emoji;
    j["unmapped_emoji"] = stats.unmapped_emoji;
    j["records_out"] = stats.records_out;
    write_json(stats_json, j);
  }
  return stats;
}

SplitSummary run_split(const PipelineConfig& config, const fs::path& input,
                       const fs::path& train_out, const fs::path& test_out,
                       const fs::path& manifest_json) {
  auto ingest = corpus::ingest_csv(input, config.labels().extraction_set());
  const std::size_t n = ingest.records.size();
  corpus::SplitSpec spec;
  spec.seed = config.split.seed;
  spec.stratified = config.split.stratified;
  spec.train_size = config.split.train_size
                        ? *config.split.train_size
                        : static_cast<std::size_t>(std::llround(
                              config.split.train_fraction * static_cast<double>(n)));
  auto parts = corpus::split(ingest.records, spec);

  ensure_parent(train_out);
  ensure_parent(test_out);
  corpus::write_csv(train_out, parts.train);
  corpus::write_csv(test_out, parts.test);

  SplitSummary summary{parts.train.size(), parts.test.size()};
  if (!manifest_json.empty()) {
    ordered_json j;
    j["provenance"] = provenance(config, "split", spec.seed).json();
    j["input_records"] = n;
    j["train_size"] = summary.train;
    j["test_size"] = summary.test;
    j["seed"] = spec.seed;
    j["stratified"] = spec.stratified;
    j["train_file"] = train_out.filename().string();
    j["test_file"] = test_out.filename().string();
    write_json(manifest_json, j);
  }
  return summary;
}

TrainOutcome run_train(const PipelineConfig& config, const fs::path& train_csv,
                       const fs::path& test_csv, const TrainPaths& out) {
  const auto train_records = load_labeled(config, train_csv);
  std::vector<TweetRecord> test_records;
  if (!test_csv.empty()) test_records = load_labeled(config, test_csv);

  std::vector<features::Document> docs;
  docs.reserve(train_records.size());
  for (const auto& r : train_records) {
    docs.push_back(features::tokenize(document_text(config, r)));
  }
  const auto tfidf = features::fit_tfidf(docs);
  const auto train_set = to_examples(config, tfidf, train_records);
  const auto val_set = to_examples(config, tfidf, test_records);

  const Provenance prov = provenance(config, "train", config.train.seed);
  auto model = classifier::init_model(tfidf.vocab_size(), config.labels().size());

  TrainOutcome outcome;
  outcome.vocab_size = tfidf.vocab_size();
  auto result = classifier::train(std::move(model), train_set, val_set, config.train);
  outcome.log = result.log;
  outcome.degenerate = result.log.steps_run == 0;
  if (outcome.degenerate) {
    std::cerr << "warning: no training steps ran (epochs=" << config.train.epochs
              << "); writing the zero model\n";
  }

  for (const auto* p : {&out.model, &out.features, &out.log, &out.summary}) {
    if (!p->empty()) ensure_parent(*p);
  }
  result.model.save(out.model, prov.line());
  tfidf.save(out.features, prov.line());
  result.log.write_tsv(out.log, prov.line());
  if (!out.summary.empty()) {
    ordered_json j;
    j["provenance"] = prov.json();
    j["train_records"] = train_records.size();
    j["validation_records"] = test_records.size();
    j["vocab_size"] = tfidf.vocab_size();
    j["num_classes"] = config.labels().size();
    j["steps_per_epoch"] = result.log.steps_per_epoch;
    j["total_steps"] = result.log.total_steps;
    j["steps_run"] = result.log.steps_run;
    ordered_json epochs = ordered_json::array();
    for (const auto& e : result.log.epochs) {
      ordered_json row;
      row["epoch"] = e.epoch;
      row["step"] = e.step;
      row["training_loss"] = e.training_loss;
      row["validation_loss"] =
          e.validation_loss ? ordered_json(*e.validation_loss) : ordered_json();
      epochs.push_back(row);
    }
    j["epochs"] = epochs;
    write_json(out.summary, j);
  }
  return outcome;
}

metrics::EvalReport run_eval(const PipelineConfig& config, const fs::path& model_path,
                             const fs::path& features_path, const fs::path& test_csv,
                             const ReportPaths& out) {
  const auto& map = config.labels();
  const auto model = classifier::SoftmaxModel::load(model_path);
  const auto tfidf = features::TfidfModel::load(features_path);
  if (model.num_features != tfidf.vocab_size()) {
    throw DimensionError(fmt::format(
        "model has {} features but feature file {} has vocabulary {}", model.num_features,
        features_path.string(), tfidf.vocab_size()));
  }
  if (model.num_classes != map.size()) {
    throw DimensionError(fmt::format("model has {} classes but the label map has {}",
                                     model.num_classes, map.size()));
  }
  const auto records = load_labeled(config, test_csv);

  std::vector<int> y_true, y_pred;
  std::string lines;
  for (const auto& r : records) {
    const std::string text = document_text(config, r);
    const int p = classifier::predict(
        model, features::transform(tfidf, features::tokenize(text)));
    y_true.push_back(*r.label);
    y_pred.push_back(p);
    lines += fmt::format("{} | predicted: {} | actual: {}\n", text, map.decode(p),
                         map.decode(*r.label));
  }
  auto report = metrics::evaluate(y_true, y_pred, map.size());
  const Provenance prov = provenance(config, "eval", config.train.seed);
  emit_report(report, map, prov, out);
  if (!out.examples.empty()) write_text(out.examples, "# " + prov.line() + "\n" + lines);
  return report;
}

metrics::EvalReport run_score_external(const PipelineConfig& config,
                                       const fs::path& predictions,
                                       const fs::path& test_csv,
                                       const ReportPaths& out) {
  const auto& map = config.labels();
  const auto records = load_labeled(config, test_csv);
  auto report = metrics::score_external(predictions, records, map);
  emit_report(report, map, provenance(config, "score-external", 0), out);
  return report;
}

std::size_t run_synth(const PipelineConfig& config, const fs::path& spec_json,
                      const fs::path& output) {
  corpus::SynthSpec spec;
  if (!spec_json.empty()) {
    std::ifstream in(spec_json);
    if (!in) throw IoError("cannot open synth spec " + spec_json.string());
    try {
      spec = synth_spec_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
      throw ConfigError(fmt::format("{}: {}", spec_json.string(), e.what()));
    }
  } else {
    const auto& s = config.synth;
    spec = s.preset == "noisy"
               ? corpus::noisy_preset(s.per_class, s.noise_rate, s.lexicon_size)
               : corpus::separable_preset(s.per_class, s.lexicon_size);
  }
  const auto records = corpus::synth_corpus(spec, config.synth.seed);
  ensure_parent(output);
  corpus::write_csv(output, records);
  return records.size();
}

std::string run_report(const fs::path& report_json, const fs::path& output) {
  std::ifstream in(report_json);
  if (!in) throw IoError("cannot open " + report_json.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(fmt::format("{}: {}", report_json.string(), e.what()));
  }
  std::string text = metrics::render_report(report_from_json(j));
  if (!output.empty()) write_text(output, text);
  return text;
}

// ---------------------------------------------------------------------------
// JSON forms

ordered_json report_to_json(const metrics::EvalReport& report, const emoji::LabelMap& map,
                            const Provenance& prov) {
  ordered_json j;
  j["provenance"] = prov.json();
  ordered_json classes = ordered_json::array();
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    ordered_json row;
    row["class"] = c;
    row["name"] = c < map.size() ? map.decode(static_cast<int>(c)) : std::string();
    row["precision"] = m.precision;
    row["recall"] = m.recall;
    row["f1"] = m.f1;
    row["support"] = m.support;
    row["precision_undefined"] = m.precision_undefined;
    row["recall_undefined"] = m.recall_undefined;
    classes.push_back(row);
  }
  j["classes"] = classes;
  j["macro"] = {{"precision", report.macro.precision},
                {"recall", report.macro.recall},
                {"f1", report.macro.f1}};
  j["weighted"] = {{"precision", report.weighted.precision},
                   {"recall", report.weighted.recall},
                   {"f1", report.weighted.f1}};
  j["accuracy"] = report.accuracy;
  j["evaluated_count"] = report.evaluated_count;
  j["skipped_unknown_ids"] = report.skipped_unknown_ids;
  j["unpredicted_records"] = report.unpredicted_records;
  ordered_json cm = ordered_json::array();
  for (std::size_t i = 0; i < report.confusion.num_classes(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < report.confusion.num_classes(); ++k) {
      row.push_back(report.confusion.at(i, k));
    }
    cm.push_back(row);
  }
  j["confusion_matrix"] = cm;
  return j;
}

metrics::EvalReport report_from_json(const json& j) {
  try {
    metrics::EvalReport r;
    const auto& cm = j.at("confusion_matrix");
    r.confusion = metrics::ConfusionMatrix(cm.size());
    for (std::size_t i = 0; i < cm.size(); ++i) {
      if (cm[i].size() != cm.size()) throw SchemaError("confusion matrix is not square");
      for (std::size_t k = 0; k < cm.size(); ++k) {
        r.confusion.add(i, k, cm[i][k].get<std::size_t>());
      }
    }
    for (const auto& row : j.at("classes")) {
      metrics::ClassMetrics m;
      m.precision = row.at("precision").get<double>();
      m.recall = row.at("recall").get<double>();
      m.f1 = row.at("f1").get<double>();
      m.support = row.at("support").get<std::size_t>();
      m.precision_undefined = row.value("precision_undefined", false);
      m.recall_undefined = row.value("recall_undefined", false);
      r.per_class.push_back(m);
    }
    r.macro = {j.at("macro").at("precision").get<double>(),
               j.at("macro").at("recall").get<double>(),
               j.at("macro").at("f1").get<double>()};
    if (j.contains("weighted")) {
      r.weighted = {j["weighted"].at("precision").get<double>(),
                    j["weighted"].at("recall").get<double>(),
                    j["weighted"].at("f1").get<double>()};
    }
    r.accuracy = j.at("accuracy").get<double>();
    r.evaluated_count = j.at("evaluated_count").get<std::size_t>();
    r.skipped_unknown_ids = j.value("skipped_unknown_ids", std::size_t{0});
    r.unpredicted_records = j.value("unpredicted_records", std::size_t{0});
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(fmt::format("report JSON: {}", e.what()));
  }
}

corpus::SynthSpec synth_spec_from_json(const json& j) {
  check_keys(j, "", {"preset", "per_class", "noise_rate", "lexicon_size", "lexicons",
                     "counts", "noise_lexicon", "min_tokens", "max_tokens", "emoji"});
  corpus::SynthSpec spec;
  if (j.contains("preset")) {
    std::string preset;
    std::size_t per_class = 100, lexicon_size = 20;
    double noise = 0.0;
    read(j, "preset", preset);
    read(j, "per_class", per_class);
    read(j, "lexicon_size", lexicon_size);
    read(j, "noise_rate", noise);
    if (preset == "separable") {
      spec = corpus::separable_preset(per_class, lexicon_size);
    } else if (preset == "noisy") {
      spec = corpus::noisy_preset(per_class, noise, lexicon_size);
    } else {
      throw ConfigError("unknown synth preset '" + preset + "'");
    }
  } else {
    read(j, "lexicons", spec.lexicons);
    read(j, "counts", spec.counts);
    read(j, "noise_rate", spec.noise_rate);
    read(j, "noise_lexicon", spec.noise_lexicon);
    read(j, "emoji", spec.emoji);
  }
  read(j, "min_tokens", spec.min_tokens);
  read(j, "max_tokens", spec.max_tokens);
  spec.validate();
  return spec;
}

}  // namespace emojipred::pipeline
