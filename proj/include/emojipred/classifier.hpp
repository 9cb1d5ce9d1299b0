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

#ifndef EMOJIPRED_CLASSIFIER_HPP_
#define EMOJIPRED_CLASSIFIER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "emojipred/features.hpp"

namespace emojipred::classifier {

using features::SparseVector;

// Multinomial logistic regression: p = softmax(W x + b). W is stored
// row-major, one row of `num_features` weights per class.
struct SoftmaxModel {
  std::size_t num_classes = 0;
  std::size_t num_features = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  std::span<double> row(std::size_t k) {
    return {weights.data() + k * num_features, num_features};
  }
  std::span<const double> row(std::size_t k) const {
    return {weights.data() + k * num_features, num_features};
  }

  void save(std::ostream& out, std::string_view comment = {}) const;
  void save(const std::filesystem::path& path, std::string_view comment = {}) const;
  static SoftmaxModel load(std::istream& in);
  static SoftmaxModel load(const std::filesystem::path& path);

  friend bool operator==(const SoftmaxModel&, const SoftmaxModel&) = default;
};

struct Example {
  SparseVector x;
  int label = 0;
};

// All-zero model. Throws ConfigError unless num_features >= 1 and
// num_classes >= 2.
SoftmaxModel init_model(std::size_t num_features, std::size_t num_classes);

std::vector<double> logits(const SoftmaxModel& model, const SparseVector& x);
// Max-subtracted softmax of the logits.
std::vector<double> forward(const SoftmaxModel& model, const SparseVector& x);
std::vector<double> softmax(std::span<const double> z);

// Mean cross-entropy plus (l2 / 2) * ||W||^2; the bias is not penalized.
double loss(const SoftmaxModel& model, std::span<const Example> batch, double l2);

// Exact gradient of loss(), shaped like the model.
SoftmaxModel grad(const SoftmaxModel& model, std::span<const Example> batch,
                  double l2);

// Argmax of the logits; ties go to the lowest class index.
int predict(const SoftmaxModel& model, const SparseVector& x);

struct TrainConfig {
  double initial_lr = 5.0e-5;
  // Schedule horizon; training also stops here. 0 means epochs × steps/epoch.
  std::size_t total_steps = 0;
  std::size_t batch_size = 32;
  std::size_t epochs = 3;
  double l2 = 1e-4;
  std::uint64_t seed = 42;
  bool eval_each_epoch = true;
  std::size_t log_interval = 50;

  void validate() const;
};

// initial_lr * max(0, 1 - step / total_steps)
double learning_rate(double initial_lr, std::size_t step, std::size_t total_steps);

// One row of the step log. Empty optionals are the blank cells of the table
// (validation rows carry no training loss, learning rate or gradient norm).
struct LogRow {
  std::size_t step = 0;
  double epoch = 0.0;
  std::optional<double> training_loss;
  std::optional<double> validation_loss;
  std::optional<double> learning_rate;
  std::optional<double> grad_norm;

  friend bool operator==(const LogRow&, const LogRow&) = default;
};

struct EpochSummary {
  std::size_t epoch = 0;  // 1-based
  std::size_t step = 0;
  double training_loss = 0.0;  // full pass over the training set
  std::optional<double> validation_loss;

  friend bool operator==(const EpochSummary&, const EpochSummary&) = default;
};

struct TrainLog {
  std::size_t steps_per_epoch = 0;
  std::size_t total_steps = 0;
  std::size_t steps_run = 0;
  std::vector<LogRow> rows;
  std::vector<EpochSummary> epochs;

  // Tab-separated: step epoch training_loss validation_loss learning_rate
  // grad_norm. `comment` lines are written first, prefixed with '#'.
  void write_tsv(std::ostream& out, std::string_view comment = {}) const;
  void write_tsv(const std::filesystem::path& path,
                 std::string_view comment = {}) const;

  friend bool operator==(const TrainLog&, const TrainLog&) = default;
};

struct StepResult {
  double loss = 0.0;       // at the parameters before the update
  double grad_norm = 0.0;  // Frobenius norm over weights and bias
};

// One gradient-descent update in place.
StepResult gradient_step(SoftmaxModel& model, std::span<const Example> batch,
                         double l2, double lr);

struct TrainResult {
  SoftmaxModel model;
  TrainLog log;
};

// Mini-batch gradient descent with a linear-decay schedule. Batches are drawn
// from a seeded per-epoch shuffle; runs are bit-reproducible for a fixed
// kernel selection. Throws TrainingError on a non-finite loss or gradient.
TrainResult train(SoftmaxModel model, std::span<const Example> train_set,
                  std::span<const Example> val_set, const TrainConfig& config);

}  // namespace emojipred::classifier

#endif  // EMOJIPRED_CLASSIFIER_HPP_
