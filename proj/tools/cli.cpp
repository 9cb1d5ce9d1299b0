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

#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>

#include "emojipred/error.hpp"
#include "emojipred/kernels.hpp"
#include "emojipred/pipeline.hpp"

namespace emojipred::cli {

namespace fs = std::filesystem;
using pipeline::PipelineConfig;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string workdir;
  std::string simd = "auto";

  // clean / split / synth / report
  std::string input;
  std::string output;
  std::string stats;
  // split
  std::optional<std::size_t> train_size;
  std::optional<double> train_fraction;
  bool stratified = false;
  std::string train_out, test_out, manifest;
  // train
  std::string train_csv, test_csv, model, features, log, summary;
  std::optional<std::size_t> epochs, batch_size, total_steps, log_interval;
  std::optional<double> lr, l2;
  // eval / score-external
  std::string predictions, report_text, report_json, examples;
  // synth
  std::string spec;
  std::optional<std::string> preset;
  std::optional<std::size_t> per_class;
  std::optional<double> noise_rate;
};

std::string or_default(const std::string& value, const fs::path& fallback) {
  return value.empty() ? fallback.string() : value;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Emoji-category prediction pipeline for colloquial Arabic tweets",
               "emojipred"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "Pipeline config (JSON)");
  app.add_option("--seed", o.seed, "Override every seed in the config");
  app.add_option("--workdir", o.workdir, "Directory for default input/output paths");
  app.add_option("--simd", o.simd, "Kernel selection: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* clean = app.add_subcommand("clean", "Label from raw emoji, clean text, write CSV");
  clean->add_option("-i,--input", o.input, "Raw CSV with a `text` column")->required();
  clean->add_option("-o,--output", o.output, "Cleaned CSV [workdir/clean.csv]");
  clean->add_option("--stats", o.stats, "Stats JSON [workdir/clean_stats.json]");

  auto* split = app.add_subcommand("split", "Seeded train/test split");
  split->add_option("-i,--input", o.input, "Labeled CSV [workdir/clean.csv]");
  split->add_option("--train-size", o.train_size, "Records in the training split");
  split->add_option("--train-fraction", o.train_fraction,
                    "Training fraction when --train-size is absent");
  split->add_flag("--stratified", o.stratified, "Preserve per-class proportions");
  split->add_option("--train-out", o.train_out, "[workdir/train.csv]");
  split->add_option("--test-out", o.test_out, "[workdir/test.csv]");
  split->add_option("--manifest", o.manifest, "[workdir/split_manifest.json]");

  auto* train = app.add_subcommand("train", "Fit TF-IDF and train the softmax classifier");
  train->add_option("--train", o.train_csv, "[workdir/train.csv]");
  train->add_option("--test", o.test_csv, "Validation CSV [workdir/test.csv if present]");
  train->add_option("--model", o.model, "[workdir/model.txt]");
  train->add_option("--features", o.features, "[workdir/features.tsv]");
  train->add_option("--log", o.log, "[workdir/train_log.tsv]");
  train->add_option("--summary", o.summary, "[workdir/train_summary.json]");
  train->add_option("--epochs", o.epochs);
  train->add_option("--batch-size", o.batch_size);
  train->add_option("--total-steps", o.total_steps);
  train->add_option("--log-interval", o.log_interval);
  train->add_option("--lr", o.lr, "Initial learning rate");
  train->add_option("--l2", o.l2);

  auto* eval = app.add_subcommand("eval", "Predict a labeled CSV and write reports");
  eval->add_option("--model", o.model, "[workdir/model.txt]");
  eval->add_option("--features", o.features, "[workdir/features.tsv]");
  eval->add_option("--test", o.test_csv, "[workdir/test.csv]");
  eval->add_option("--report", o.report_text, "[workdir/report.txt]");
  eval->add_option("--report-json", o.report_json, "[workdir/report.json]");
  eval->add_option("--examples", o.examples, "[workdir/predictions.txt]");

  auto* score = app.add_subcommand("score-external",
                                   "Score an `id,predicted` CSV from another model");
  score->add_option("-p,--predictions", o.predictions)->required();
  score->add_option("--test", o.test_csv, "[workdir/test.csv]");
  score->add_option("--report", o.report_text, "[workdir/external_report.txt]");
  score->add_option("--report-json", o.report_json, "[workdir/external_report.json]");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth->add_option("--spec", o.spec, "Synth spec JSON (overrides the preset flags)");
  synth->add_option("--preset", o.preset)->check(CLI::IsMember({"separable", "noisy"}));
  synth->add_option("--per-class", o.per_class);
  synth->add_option("--noise-rate", o.noise_rate);
  synth->add_option("-o,--output", o.output, "[workdir/synth.csv]");

  auto* report = app.add_subcommand("report", "Render a report JSON as a table");
  report->add_option("-i,--input", o.input, "[workdir/report.json]");
  report->add_option("-o,--output", o.output, "Text file (stdout when omitted)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("emojipred");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (o.simd == "scalar") {
      kernels::select(kernels::Isa::kScalar);
    } else if (o.simd == "avx2" && !kernels::select(kernels::Isa::kAvx2)) {
      err << "warning: AVX2 kernels unavailable; using "
          << kernels::active().name << "\n";
    }

    PipelineConfig config =
        o.config_path.empty() ? PipelineConfig{} : PipelineConfig::load(o.config_path);
    if (o.seed) config.set_seed(*o.seed);
    if (!o.workdir.empty()) config.workdir = o.workdir;
    const fs::path wd = config.workdir;

    if (*clean) {
      const std::string output = or_default(o.output, wd / "clean.csv");
      const auto s = pipeline::run_clean(config, o.input, output,
                                         or_default(o.stats, wd / "clean_stats.json"));
      err << "clean: " << s.corpus.total_ingested << " ingested, "
          << s.corpus.with_emoji << " with emoji, " << s.records_out << " labeled -> "
          << output << "\n";
    } else if (*split) {
      if (o.train_size) config.split.train_size = o.train_size;
      if (o.train_fraction) config.split.train_fraction = *o.train_fraction;
      if (o.stratified) config.split.stratified = true;
      config.validate();
      const auto s = pipeline::run_split(
          config, or_default(o.input, wd / "clean.csv"),
          or_default(o.train_out, wd / "train.csv"), or_default(o.test_out, wd / "test.csv"),
          or_default(o.manifest, wd / "split_manifest.json"));
      err << "split: train " << s.train << ", test " << s.test << "\n";
    } else if (*train) {
      if (o.epochs) config.train.epochs = *o.epochs;
      if (o.batch_size) config.train.batch_size = *o.batch_size;
      if (o.total_steps) config.train.total_steps = *o.total_steps;
      if (o.log_interval) config.train.log_interval = *o.log_interval;
      if (o.lr) config.train.initial_lr = *o.lr;
      if (o.l2) config.train.l2 = *o.l2;
      config.validate();
      std::string test_csv = o.test_csv;
      if (test_csv.empty() && fs::exists(wd / "test.csv")) test_csv = (wd / "test.csv").string();
      pipeline::TrainPaths paths{or_default(o.model, wd / "model.txt"),
                                 or_default(o.features, wd / "features.tsv"),
                                 or_default(o.log, wd / "train_log.tsv"),
                                 or_default(o.summary, wd / "train_summary.json")};
      const auto r = pipeline::run_train(config, or_default(o.train_csv, wd / "train.csv"),
                                         test_csv, paths);
      err << "train: vocabulary " << r.vocab_size << ", " << r.log.steps_run
          << " steps (" << kernels::active().name << " kernels)\n";
    } else if (*eval) {
      const auto r = pipeline::run_eval(
          config, or_default(o.model, wd / "model.txt"),
          or_default(o.features, wd / "features.tsv"), or_default(o.test_csv, wd / "test.csv"),
          {or_default(o.report_text, wd / "report.txt"),
           or_default(o.report_json, wd / "report.json"),
           or_default(o.examples, wd / "predictions.txt")});
      err << "eval: accuracy " << r.accuracy << " over " << r.evaluated_count << "\n";
    } else if (*score) {
      const auto r = pipeline::run_score_external(
          config, o.predictions, or_default(o.test_csv, wd / "test.csv"),
          {or_default(o.report_text, wd / "external_report.txt"),
           or_default(o.report_json, wd / "external_report.json"), {}});
      err << "score-external: evaluated " << r.evaluated_count << ", accuracy "
          << r.accuracy << "\n";
    } else if (*synth) {
      if (o.preset) config.synth.preset = *o.preset;
      if (o.per_class) config.synth.per_class = *o.per_class;
      if (o.noise_rate) config.synth.noise_rate = *o.noise_rate;
      config.validate();
      const std::string output = or_default(o.output, wd / "synth.csv");
      const auto n = pipeline::run_synth(config, o.spec, output);
      err << "synth: " << n << " records -> " << output << "\n";
    } else if (*report) {
      const auto text =
          pipeline::run_report(or_default(o.input, wd / "report.json"), o.output);
      if (o.output.empty()) out << text;
    }
  } catch (const TrainingError& e) {
    err << "error: training aborted: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace emojipred::cli
