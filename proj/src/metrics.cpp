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

#include "emojipred/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "emojipred/csv.hpp"
#include "emojipred/error.hpp"

namespace emojipred::metrics {

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < k_; ++i) s += at(i, i);
  return s;
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < k_; ++j) s += at(truth, j);
  return s;
}

std::size_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < k_; ++i) s += at(i, predicted);
  return s;
}

ConfusionMatrix confusion_matrix(std::span<const int> y_true,
                                 std::span<const int> y_pred,
                                 std::size_t num_classes) {
  if (y_true.size() != y_pred.size()) {
    throw BoundsError(fmt::format("{} true labels but {} predictions", y_true.size(),
                                  y_pred.size()));
  }
  ConfusionMatrix cm(num_classes);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    for (int v : {y_true[i], y_pred[i]}) {
      if (v < 0 || static_cast<std::size_t>(v) >= num_classes) {
        throw BoundsError(fmt::format("label {} at position {} outside 0..{}", v, i,
                                      num_classes - 1));
      }
    }
    cm.add(y_true[i], y_pred[i]);
  }
  return cm;
}

double f1_score(double precision, double recall) {
  const double d = precision + recall;
  return d > 0.0 ? 2.0 * precision * recall / d : 0.0;
}

std::vector<ClassMetrics> class_metrics(const ConfusionMatrix& cm) {
  std::vector<ClassMetrics> out(cm.num_classes());
  for (std::size_t c = 0; c < cm.num_classes(); ++c) {
    const double tp = static_cast<double>(cm.at(c, c));
    const std::size_t predicted = cm.col_sum(c);
    const std::size_t support = cm.row_sum(c);
    auto& m = out[c];
    m.support = support;
    m.precision_undefined = predicted == 0;
    m.recall_undefined = support == 0;
    m.precision = predicted ? tp / static_cast<double>(predicted) : 0.0;
    m.recall = support ? tp / static_cast<double>(support) : 0.0;
    m.f1 = f1_score(m.precision, m.recall);
  }
  return out;
}

Averages macro_avg(std::span<const ClassMetrics> per_class) {
  if (per_class.empty()) throw PreconditionError("macro average of no classes");
  Averages a;
  for (const auto& m : per_class) {
    a.precision += m.precision;
    a.recall += m.recall;
    a.f1 += m.f1;
  }
  const double n = static_cast<double>(per_class.size());
  a.precision /= n;
  a.recall /= n;
  a.f1 /= n;
  return a;
}

Averages weighted_avg(std::span<const ClassMetrics> per_class) {
  Averages a;
  double total = 0.0;
  for (const auto& m : per_class) {
    const double w = static_cast<double>(m.support);
    a.precision += w * m.precision;
    a.recall += w * m.recall;
    a.f1 += w * m.f1;
    total += w;
  }
  if (total > 0.0) {
    a.precision /= total;
    a.recall /= total;
    a.f1 /= total;
  }
  return a;
}

double accuracy(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw PreconditionError("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

EvalReport make_report(const ConfusionMatrix& cm) {
  EvalReport r;
  r.confusion = cm;
  r.per_class = class_metrics(cm);
  r.evaluated_count = cm.total();
  if (!r.per_class.empty()) r.macro = macro_avg(r.per_class);
  r.weighted = weighted_avg(r.per_class);
  r.accuracy = r.evaluated_count ? accuracy(cm) : 0.0;
  return r;
}

EvalReport evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                    std::size_t num_classes) {
  return make_report(confusion_matrix(y_true, y_pred, num_classes));
}

std::string format2(double v) {
  // The epsilon absorbs binary representation error so that decimal ties
  // such as 0.845 round up.
  const double r = std::floor(v * 100.0 + 0.5 + 1e-9) / 100.0;
  return fmt::format("{:.2f}", r);
}

std::string render_report(const EvalReport& report) {
  std::string out = "Class  Precision  Recall  F1-score  Support\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    out += fmt::format("{}  {}  {}  {}  {}\n", c, format2(m.precision),
                       format2(m.recall), format2(m.f1), m.support);
  }
  out += "\n";
  out += fmt::format("macro avg  {}  {}  {}  {}\n", format2(report.macro.precision),
                     format2(report.macro.recall), format2(report.macro.f1),
                     report.evaluated_count);
  out += fmt::format("weighted avg  {}  {}  {}  {}\n",
                     format2(report.weighted.precision),
                     format2(report.weighted.recall), format2(report.weighted.f1),
                     report.evaluated_count);
  out += fmt::format("accuracy  {}  {}\n", format2(report.accuracy),
                     report.evaluated_count);
  out += fmt::format("evaluated  {}\n", report.evaluated_count);
  return out;
}

namespace {

int parse_prediction(std::string_view field, const emoji::LabelMap& map,
                     std::size_t line) {
  if (field.empty()) {
    throw ParseError(fmt::format("predictions line {}: empty prediction", line), line);
  }
  int v = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec == std::errc() && p == field.data() + field.size()) {
    if (v < 0 || static_cast<std::size_t>(v) >= map.size()) {
      throw ParseError(
          fmt::format("predictions line {}: class index {} out of range", line, v), line);
    }
    return v;
  }
  try {
    return map.encode(field);
  } catch (const MappingError&) {
    throw ParseError(
        fmt::format("predictions line {}: unknown category '{}'", line, field), line);
  }
}

}  // namespace

EvalReport score_external(std::istream& predictions,
                          std::span<const TweetRecord> labeled_test,
                          const emoji::LabelMap& map) {
  std::unordered_map<std::string, int> gold;
  for (const auto& r : labeled_test) {
    if (r.label) gold.emplace(r.id, *r.label);
  }

  csv::Reader reader(predictions);
  auto header = reader.next();
  if (!header) throw SchemaError("predictions file has no header");
  const auto id_col = csv::column(header->fields, "id");
  const auto pred_col = csv::column(header->fields, "predicted");
  if (!id_col || !pred_col) {
    throw SchemaError("predictions header must contain `id` and `predicted`");
  }
  const std::size_t width = header->fields.size();

  ConfusionMatrix cm(map.size());
  std::unordered_set<std::string> seen;
  std::size_t unknown = 0;
  while (auto row = reader.next()) {
    if (!row->well_formed || row->fields.size() != width) {
      throw ParseError(fmt::format("predictions line {}: malformed row", row->line),
                       row->line);
    }
    const std::string& id = row->fields[*id_col];
    const int predicted = parse_prediction(row->fields[*pred_col], map, row->line);
    if (!seen.insert(id).second) {
      throw ParseError(fmt::format("predictions line {}: duplicate id '{}'", row->line, id),
                       row->line);
    }
    auto it = gold.find(id);
    if (it == gold.end()) {
      std::cerr << "warning: predictions line " << row->line << ": unknown id '" << id
                << "', skipped\n";
      ++unknown;
      continue;
    }
    if (it->second < 0 || static_cast<std::size_t>(it->second) >= map.size()) {
      throw BoundsError(fmt::format("test record '{}' has label {} outside the map", id,
                                    it->second));
    }
    cm.add(it->second, predicted);
  }
  EvalReport report = make_report(cm);
  report.skipped_unknown_ids = unknown;
  report.unpredicted_records = gold.size() - report.evaluated_count;
  return report;
}

EvalReport score_external(const std::filesystem::path& predictions_path,
                          std::span<const TweetRecord> labeled_test,
                          const emoji::LabelMap& map) {
  std::ifstream in(predictions_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + predictions_path.string());
  return score_external(in, labeled_test, map);
}

}  // namespace emojipred::metrics
