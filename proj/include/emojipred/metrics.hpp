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

#ifndef EMOJIPRED_METRICS_HPP_
#define EMOJIPRED_METRICS_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <span>
#include <vector>

#include "emojipred/emoji.hpp"
#include "emojipred/record.hpp"

namespace emojipred::metrics {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes = 0)
      : k_(num_classes), counts_(num_classes * num_classes, 0) {}

  std::size_t num_classes() const { return k_; }
  std::size_t at(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * k_ + predicted];
  }
  void add(std::size_t truth, std::size_t predicted, std::size_t n = 1) {
    counts_[truth * k_ + predicted] += n;
  }
  std::size_t total() const;
  std::size_t trace() const;
  std::size_t row_sum(std::size_t truth) const;
  std::size_t col_sum(std::size_t predicted) const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t k_;
  std::vector<std::size_t> counts_;
};

// Throws BoundsError for a length mismatch or a label outside 0..K-1.
ConfusionMatrix confusion_matrix(std::span<const int> y_true,
                                 std::span<const int> y_pred,
                                 std::size_t num_classes);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  // Set when the matching denominator was zero and the value defaulted to 0.
  bool precision_undefined = false;
  bool recall_undefined = false;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

// 2PR / (P + R), or 0 when P + R = 0.
double f1_score(double precision, double recall);

std::vector<ClassMetrics> class_metrics(const ConfusionMatrix& cm);

struct Averages {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Unweighted column means. Throws PreconditionError for an empty list.
Averages macro_avg(std::span<const ClassMetrics> per_class);
// Support-weighted column means; zero when total support is zero.
Averages weighted_avg(std::span<const ClassMetrics> per_class);

// trace / total. Throws PreconditionError for an empty matrix.
double accuracy(const ConfusionMatrix& cm);

struct EvalReport {
  ConfusionMatrix confusion;
  std::vector<ClassMetrics> per_class;
  Averages macro;
  Averages weighted;
  double accuracy = 0.0;
  std::size_t evaluated_count = 0;
  // Only set by score_external.
  std::size_t skipped_unknown_ids = 0;
  std::size_t unpredicted_records = 0;
};

EvalReport make_report(const ConfusionMatrix& cm);
EvalReport evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                    std::size_t num_classes);

// Round half up at two decimals, as printed in reports.
std::string format2(double v);

// Report layout: a header, one row per class, then macro, weighted,
// accuracy and evaluated-count footer lines.
std::string render_report(const EvalReport& report);

// Joins an `id,predicted` CSV onto labeled test records by id. `predicted`
// is a category name or a class index. Unknown ids are skipped and counted;
// malformed rows throw ParseError naming the line.
EvalReport score_external(const std::filesystem::path& predictions_path,
                          std::span<const TweetRecord> labeled_test,
                          const emoji::LabelMap& map);
EvalReport score_external(std::istream& predictions,
                          std::span<const TweetRecord> labeled_test,
                          const emoji::LabelMap& map);

}  // namespace emojipred::metrics

#endif  // EMOJIPRED_METRICS_HPP_
