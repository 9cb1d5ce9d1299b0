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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "emojipred/classifier.hpp"
#include "emojipred/corpus.hpp"
#include "emojipred/emoji.hpp"
#include "emojipred/features.hpp"
#include "emojipred/metrics.hpp"
#include "emojipred/normalize.hpp"
#include "emojipred/pipeline.hpp"
#include "emojipred/rng.hpp"
#include "fuzz.hpp"
#include "test_util.hpp"

namespace emojipred::acceptance {
namespace {

namespace t = testing;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome f1_formula() {
  const double f1 = metrics::f1_score(0.84, 0.87);
  const auto row0 = t::published_results()[0];
  const double class0 = metrics::f1_score(row0.precision, row0.recall);
  const bool ok = std::abs(f1 - 0.8547) <= 1e-4 && std::abs(class0 - 0.7107) <= 1e-4 &&
                  std::abs(class0 - row0.f1) > 0.01;
  return {ok, fmt::format("F1(0.84,0.87)={:.4f}; class 0 computed {:.4f} vs printed {:.2f}",
                          f1, class0, row0.f1)};
}

Outcome macro_oracle() {
  std::vector<metrics::ClassMetrics> rows;
  for (const auto& r : t::published_results()) rows.push_back({r.precision, r.recall, r.f1, r.support});
  const auto m = metrics::macro_avg(rows);
  const bool ok = std::abs(m.precision - 0.5814) <= 5e-4 &&
                  std::abs(m.recall - 0.7429) <= 5e-4 && std::abs(m.f1 - 0.6421) <= 5e-4 &&
                  metrics::format2(m.precision) == "0.58" &&
                  metrics::format2(m.recall) == "0.74" && metrics::format2(m.f1) == "0.64";
  return {ok, fmt::format("macro P/R/F1 = {:.4f}/{:.4f}/{:.4f}", m.precision, m.recall, m.f1)};
}

Outcome support_sum() {
  std::size_t total = 0;
  for (const auto& r : t::published_results()) total += r.support;
  return {total == 3203, fmt::format("support total {}", total)};
}

Outcome corpus_arithmetic() {
  std::istringstream in(t::scraped_corpus_csv(11379, 2684));
  const auto ingested = corpus::ingest_csv(in);
  const auto filtered = corpus::filter_emoji_bearing(ingested.records);
  const auto parts = corpus::split(filtered.kept, {4000, 42, false});
  const bool ok = ingested.stats.total_ingested == 11379 && filtered.kept.size() == 8695 &&
                  filtered.excluded == 2684 && parts.train.size() == 4000 &&
                  parts.test.size() == 4695;
  return {ok, fmt::format("{} -> {} (excluded {}) -> {}/{}", ingested.stats.total_ingested,
                          filtered.kept.size(), filtered.excluded, parts.train.size(),
                          parts.test.size())};
}

Outcome emoji_conformance() {
  const auto& map = emoji::LabelMap::builtin();
  const auto reloaded = emoji::LabelMap::load(EMOJIPRED_DATA_DIR "/label_map.tsv");
  std::size_t round_trips = 0, mapped = 0;
  const auto examples = t::example_tweets();
  for (const auto& ex : examples) {
    const auto text = ex.text + " " + t::u8(ex.emoji) +
                      (ex.emoji == 0x2764 ? t::u8(0xFE0F) : std::string());
    const auto first = emoji::first_emoji(text);
    const auto cat = map.categorize(ex.emoji);
    if (first == ex.emoji && cat == map.categorize(ex.emoji) &&
        cat == reloaded.categorize(ex.emoji)) {
      ++round_trips;
    }
    mapped += cat.has_value();
  }
  const emoji::EmojiRangeSet plain;
  auto in_any = [](char32_t c) {
    for (const auto& r : emoji::kExtractionRanges) {
      if (r.first <= c && c <= r.last) return true;
    }
    return false;
  };
  std::size_t boundaries_ok = 0;
  for (const auto& r : emoji::kExtractionRanges) {
    const bool inside = plain.contains(r.first) && plain.contains(r.last);
    const bool below = in_any(r.first - 1) || !plain.contains(r.first - 1);
    const bool above = in_any(r.last + 1) || !plain.contains(r.last + 1);
    if (inside && below && above) ++boundaries_ok;
  }
  const bool ok = round_trips == examples.size() && boundaries_ok == 6;
  return {ok, fmt::format("{}/{} example round trips ({} with a table category), "
                          "{}/6 range boundaries",
                          round_trips, examples.size(), mapped, boundaries_ok)};
}

Outcome gradient_check() {
  Rng rng(20260101);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    worst = std::max(worst, t::max_grad_relative_error(t::random_grad_instance(rng)));
  }
  return {worst < 1e-5, fmt::format("max relative error {:.3e} over 100 instances", worst)};
}

Outcome lr_schedule() {
  const double expected[] = {4.68e-5, 4.36e-5, 4.04e-5};
  bool ok = true;
  std::string got;
  for (int i = 0; i < 3; ++i) {
    const double lr = classifier::learning_rate(5e-5, 50 * (i + 1), 781);
    ok = ok && std::abs(lr - expected[i]) <= 1e-7;
    got += fmt::format(" {:.3e}", lr);
  }
  return {ok, "lr at 50/100/150:" + got};
}

// synth → stratified 80/20 split → train → eval, all inside `dir`.
struct RunResult {
  pipeline::TrainOutcome train;
  metrics::EvalReport report;
};

RunResult end_to_end(const t::TempDir& dir) {
  pipeline::PipelineConfig c;
  c.workdir = dir.path();
  c.synth.per_class = 150;
  c.split.stratified = true;
  c.split.train_fraction = 0.8;
  c.train.initial_lr = 2.0;
  c.train.batch_size = 16;
  c.train.epochs = 5;
  pipeline::run_synth(c, {}, dir / "synth.csv");
  pipeline::run_split(c, dir / "synth.csv", dir / "train.csv", dir / "test.csv",
                      dir / "split_manifest.json");
  RunResult r;
  r.train = pipeline::run_train(c, dir / "train.csv", dir / "test.csv",
                                {dir / "model.txt", dir / "features.tsv",
                                 dir / "train_log.tsv", dir / "train_summary.json"});
  r.report = pipeline::run_eval(c, dir / "model.txt", dir / "features.tsv", dir / "test.csv",
                                {dir / "report.txt", dir / "report.json",
                                 dir / "predictions.txt"});
  return r;
}

Outcome end_to_end_property() {
  t::TempDir dir("accept_e2e");
  const auto r = end_to_end(dir);
  const auto& epochs = r.train.log.epochs;
  bool decreasing = epochs.size() >= 2;
  std::string losses;
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    if (i && !(epochs[i].training_loss < epochs[i - 1].training_loss)) decreasing = false;
    losses += fmt::format(" {:.4f}", epochs[i].training_loss);
  }
  return {r.report.macro.f1 >= 0.90 && decreasing,
          fmt::format("macro-F1 {:.4f} on {} test records; epoch losses{}", r.report.macro.f1,
                      r.report.evaluated_count, losses)};
}

Outcome determinism() {
  t::TempDir a("accept_det_a"), b("accept_det_b");
  end_to_end(a);
  end_to_end(b);
  std::size_t same = 0;
  const std::vector<std::string> files = {"train.csv", "test.csv", "model.txt",
                                          "train_log.tsv", "report.json"};
  for (const auto& f : files) {
    const auto x = t::read_file(a / f);
    if (!x.empty() && x == t::read_file(b / f)) ++same;
  }
  return {same == files.size(),
          fmt::format("{}/{} artifacts byte-identical", same, files.size())};
}

Outcome tfidf_invariants() {
  Rng rng(10);
  std::vector<features::Document> docs;
  for (int i = 0; i < 1000; ++i) {
    features::Document d = {"everywhere"};
    for (std::size_t j = 0, n = rng.below(15); j < n; ++j) {
      d.push_back("w" + std::to_string(rng.below(1 + rng.below(400))));
    }
    docs.push_back(std::move(d));
  }
  const auto m = features::fit_tfidf(docs);
  std::size_t unit = 0;
  for (const auto& d : docs) {
    const auto v = features::transform(m, d);
    if (!v.empty() && std::abs(v.norm() - 1.0) <= 1e-9) ++unit;
  }
  const bool idf_one = m.idf(*m.index_of("everywhere")) == 1.0;
  std::size_t violations = 0;
  for (std::uint32_t i = 0; i < m.vocab_size(); ++i) {
    for (std::uint32_t j = 0; j < m.vocab_size(); ++j) {
      if (m.doc_freq(i) < m.doc_freq(j) && !(m.idf(i) > m.idf(j))) ++violations;
    }
  }
  return {unit == docs.size() && idf_one && violations == 0,
          fmt::format("{}/{} unit norm, shared-token idf {}, {} monotonicity violations", unit,
                      docs.size(), m.idf(*m.index_of("everywhere")), violations)};
}

Outcome normalization_fuzz() {
  using normalize::clean_text;
  const std::string worked[3][2] = {
      {"@XXX مبروك عقبالي " + t::u8(0x1F60F), "مبروك عقبالي"},
      {"", ""},
      {"احبك كتييييير ... &", "احبك كتير"},
  };
  std::size_t worked_ok = 0;
  for (const auto& w : worked) worked_ok += clean_text(w[0]) == w[1];
  Rng rng(11);
  std::size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto x = t::random_text(rng, 60);
    const auto once = clean_text(x);
    if (clean_text(once) != once || !emoji::extract_emojis(once).empty() ||
        utf8::decode(once).size() > utf8::decode(x).size()) {
      ++failures;
    }
  }
  return {worked_ok == 3 && failures == 0,
          fmt::format("{}/3 worked examples, {} of 10000 fuzz strings failed", worked_ok,
                      failures)};
}

Outcome external_scoring() {
  const auto f = t::external_fixture();
  const auto& map = emoji::LabelMap::builtin();
  std::istringstream in(f.predictions_csv);
  const auto report = metrics::score_external(in, f.test, map);
  const auto text = metrics::render_report(report);
  const bool layout = text.rfind("Class  Precision  Recall  F1-score  Support\n", 0) == 0 &&
                      text.find("\nevaluated  3203\n") != std::string::npos;
  return {report.evaluated_count == 3203 && report.accuracy == 1.0 && layout,
          fmt::format("evaluated {} of {}, gold-copy accuracy {:.2f}", report.evaluated_count,
                      f.test.size(), report.accuracy)};
}

}  // namespace
}  // namespace emojipred::acceptance

int main() {
  using namespace emojipred::acceptance;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"metric formula", f1_formula},
      {"macro averages", macro_oracle},
      {"support arithmetic", support_sum},
      {"corpus arithmetic", corpus_arithmetic},
      {"emoji extraction", emoji_conformance},
      {"gradient check", gradient_check},
      {"learning-rate schedule", lr_schedule},
      {"end-to-end separable", end_to_end_property},
      {"determinism", determinism},
      {"tf-idf invariants", tfidf_invariants},
      {"normalization fuzz", normalization_fuzz},
      {"external scoring", external_scoring},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, check] = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    failed += !o.pass;
    fmt::print("{} {:>2} {:<24} {} ({:.2f}s)\n", o.pass ? "PASS" : "FAIL", i + 1, name,
               o.detail, took.count());
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
