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

#include "emojipred/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "emojipred/error.hpp"
#include "emojipred/kernels.hpp"
#include "emojipred/rng.hpp"

namespace emojipred::classifier {

namespace {

void check_dim(const SoftmaxModel& model, const SparseVector& x) {
  if (x.dim != model.num_features) {
    throw DimensionError(fmt::format("feature vector has dimension {}, model expects {}",
                                     x.dim, model.num_features));
  }
}

void check_label(const SoftmaxModel& model, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= model.num_classes) {
    throw BoundsError(fmt::format("label {} outside 0..{}", label,
                                  model.num_classes - 1));
  }
}

double log_sum_exp(std::span<const double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return m + std::log(s);
}

// Cross-entropy data term summed (not averaged) over `batch`.
template <typename Batch>
double data_loss_sum(const SoftmaxModel& model, const Batch& batch) {
  double total = 0.0;
  for (const Example& ex : batch) {
    check_dim(model, ex.x);
    check_label(model, ex.label);
    const auto z = logits(model, ex.x);
    total += log_sum_exp(z) - z[ex.label];
  }
  return total;
}

// Fills `g` with the gradient over `batch` and returns the loss at `model`.
template <typename Batch>
double loss_and_grad(const SoftmaxModel& model, const Batch& batch,
                     std::size_t batch_len, double l2, SoftmaxModel& g) {
  const std::size_t k_classes = model.num_classes;
  g.num_classes = k_classes;
  g.num_features = model.num_features;
  g.weights.assign(model.weights.size(), 0.0);
  g.bias.assign(k_classes, 0.0);

  const double inv_n = 1.0 / static_cast<double>(batch_len);
  double total = 0.0;
  for (const Example& ex : batch) {
    check_dim(model, ex.x);
    check_label(model, ex.label);
    const auto z = logits(model, ex.x);
    total += log_sum_exp(z) - z[ex.label];
    const auto p = softmax(z);
    for (std::size_t k = 0; k < k_classes; ++k) {
      const double r = (p[k] - (static_cast<int>(k) == ex.label ? 1.0 : 0.0)) * inv_n;
      g.bias[k] += r;
      kernels::sparse_axpy(r, ex.x.indices, ex.x.values, g.row(k));
    }
  }
  if (l2 != 0.0) kernels::axpy(l2, model.weights, g.weights);
  return total * inv_n + 0.5 * l2 * kernels::sum_squares(model.weights);
}

// Examples addressed through an index list, iterable like a span.
struct IndexedBatch {
  std::span<const Example> pool;
  std::span<const std::size_t> order;

  struct iterator {
    const IndexedBatch* b;
    std::size_t i;
    const Example& operator*() const { return b->pool[b->order[i]]; }
    iterator& operator++() {
      ++i;
      return *this;
    }
    bool operator!=(const iterator& o) const { return i != o.i; }
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, order.size()}; }
};

double frobenius(const SoftmaxModel& g) {
  return std::sqrt(kernels::sum_squares(g.weights) + kernels::sum_squares(g.bias));
}

}  // namespace

SoftmaxModel init_model(std::size_t num_features, std::size_t num_classes) {
  if (num_features < 1) throw ConfigError("model needs at least one feature");
  if (num_classes < 2) throw ConfigError("model needs at least two classes");
  SoftmaxModel m;
  m.num_classes = num_classes;
  m.num_features = num_features;
  m.weights.assign(num_classes * num_features, 0.0);
  m.bias.assign(num_classes, 0.0);
  return m;
}

std::vector<double> logits(const SoftmaxModel& model, const SparseVector& x) {
  check_dim(model, x);
  std::vector<double> z(model.num_classes);
  for (std::size_t k = 0; k < model.num_classes; ++k) {
    z[k] = kernels::sparse_dot(x.indices, x.values, model.row(k)) + model.bias[k];
  }
  return z;
}

std::vector<double> softmax(std::span<const double> z) {
  std::vector<double> p(z.size());
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    p[k] = std::exp(z[k] - m);
    s += p[k];
  }
  for (double& v : p) v /= s;
  return p;
}

std::vector<double> forward(const SoftmaxModel& model, const SparseVector& x) {
  return softmax(logits(model, x));
}

double loss(const SoftmaxModel& model, std::span<const Example> batch, double l2) {
  if (batch.empty()) throw PreconditionError("loss of an empty batch");
  return data_loss_sum(model, batch) / static_cast<double>(batch.size()) +
         0.5 * l2 * kernels::sum_squares(model.weights);
}

SoftmaxModel grad(const SoftmaxModel& model, std::span<const Example> batch,
                  double l2) {
  if (batch.empty()) throw PreconditionError("gradient of an empty batch");
  SoftmaxModel g;
  loss_and_grad(model, batch, batch.size(), l2, g);
  return g;
}

int predict(const SoftmaxModel& model, const SparseVector& x) {
  const auto z = logits(model, x);
  // max_element returns the first maximum.
  return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
}

void TrainConfig::validate() const {
  if (!(initial_lr > 0.0) || !std::isfinite(initial_lr)) {
    throw ConfigError("initial_lr must be positive");
  }
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw ConfigError("l2 must be >= 0");
  if (log_interval == 0) throw ConfigError("log_interval must be positive");
}

double learning_rate(double initial_lr, std::size_t step, std::size_t total_steps) {
  if (total_steps == 0) return 0.0;
  const double frac = 1.0 - static_cast<double>(step) / static_cast<double>(total_steps);
  return initial_lr * std::max(0.0, frac);
}

StepResult gradient_step(SoftmaxModel& model, std::span<const Example> batch,
                         double l2, double lr) {
  if (batch.empty()) throw PreconditionError("gradient step on an empty batch");
  SoftmaxModel g;
  StepResult r;
  r.loss = loss_and_grad(model, batch, batch.size(), l2, g);
  r.grad_norm = frobenius(g);
  kernels::axpy(-lr, g.weights, model.weights);
  kernels::axpy(-lr, g.bias, model.bias);
  return r;
}

TrainResult train(SoftmaxModel model, std::span<const Example> train_set,
                  std::span<const Example> val_set, const TrainConfig& config) {
  config.validate();
  for (const auto& ex : train_set) {
    check_label(model, ex.label);
    check_dim(model, ex.x);
  }
  for (const auto& ex : val_set) {
    check_label(model, ex.label);
    check_dim(model, ex.x);
  }

  TrainLog log;
  const std::size_t n = train_set.size();
  log.steps_per_epoch = n == 0 ? 0 : (n + config.batch_size - 1) / config.batch_size;
  const std::size_t planned = config.epochs * log.steps_per_epoch;
  const std::size_t run_steps =
      config.total_steps ? std::min(planned, config.total_steps) : planned;
  log.total_steps = config.total_steps ? config.total_steps : planned;

  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  SoftmaxModel g;
  std::size_t step = 0;
  double window_loss = 0.0;
  std::size_t window_len = 0;
  double last_grad_norm = 0.0;

  for (std::size_t epoch = 1; step < run_steps; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < n && step < run_steps;
         start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, n - start);
      const IndexedBatch batch{train_set, std::span(order).subspan(start, len)};
      const double lr = learning_rate(config.initial_lr, step, log.total_steps);
      const double batch_loss = loss_and_grad(model, batch, len, config.l2, g);
      const double norm = frobenius(g);
      if (!std::isfinite(batch_loss) || !std::isfinite(norm)) {
        throw TrainingError(
            fmt::format("non-finite loss at step {} (last good step {})", step + 1, step),
            static_cast<long>(step + 1), static_cast<long>(step));
      }
      kernels::axpy(-lr, g.weights, model.weights);
      kernels::axpy(-lr, g.bias, model.bias);
      ++step;
      window_loss += batch_loss;
      ++window_len;
      last_grad_norm = norm;

      LogRow row;
      row.step = step;
      row.epoch = static_cast<double>(step) / static_cast<double>(log.steps_per_epoch);
      bool emit = false;
      if (step % config.log_interval == 0) {
        row.training_loss = window_loss / static_cast<double>(window_len);
        row.learning_rate = learning_rate(config.initial_lr, step, log.total_steps);
        row.grad_norm = last_grad_norm;
        window_loss = 0.0;
        window_len = 0;
        emit = true;
      }
      if (step % log.steps_per_epoch == 0 && config.eval_each_epoch) {
        EpochSummary summary;
        summary.epoch = epoch;
        summary.step = step;
        summary.training_loss = loss(model, train_set, config.l2);
        if (!val_set.empty()) {
          summary.validation_loss = loss(model, val_set, config.l2);
          row.validation_loss = summary.validation_loss;
          emit = true;
        }
        log.epochs.push_back(summary);
      }
      if (emit) log.rows.push_back(row);
    }
  }
  log.steps_run = step;
  return {std::move(model), std::move(log)};
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

void write_comment(std::ostream& out, std::string_view comment) {
  std::istringstream lines{std::string(comment)};
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

}  // namespace

void TrainLog::write_tsv(std::ostream& out, std::string_view comment) const {
  if (!comment.empty()) write_comment(out, comment);
  out << "step\tepoch\ttraining_loss\tvalidation_loss\tlearning_rate\tgrad_norm\n";
  auto cell = [](const std::optional<double>& v, const char* spec) {
    return v ? fmt::format(fmt::runtime(spec), *v) : std::string();
  };
  for (const auto& r : rows) {
    out << r.step << '\t' << fmt::format("{:.2f}", r.epoch) << '\t'
        << cell(r.training_loss, "{:.6f}") << '\t'
        << cell(r.validation_loss, "{:.6f}") << '\t'
        << cell(r.learning_rate, "{:.2e}") << '\t'
        << cell(r.grad_norm, "{:.6f}") << '\n';
  }
}

void TrainLog::write_tsv(const std::filesystem::path& path,
                         std::string_view comment) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_tsv(out, comment);
  if (!out) throw IoError("write failed for " + path.string());
}

void SoftmaxModel::save(std::ostream& out, std::string_view comment) const {
  if (!comment.empty()) write_comment(out, comment);
  out << num_classes << ' ' << num_features << '\n';
  for (std::size_t k = 0; k < num_classes; ++k) {
    const auto r = row(k);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ' ';
      out << fmt::format("{:.17g}", r[j]);
    }
    out << '\n';
  }
  for (std::size_t k = 0; k < num_classes; ++k) {
    if (k) out << ' ';
    out << fmt::format("{:.17g}", bias[k]);
  }
  out << '\n';
}

void SoftmaxModel::save(const std::filesystem::path& path,
                        std::string_view comment) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  save(out, comment);
  if (!out) throw IoError("write failed for " + path.string());
}

SoftmaxModel SoftmaxModel::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() != '#') return true;
    }
    return false;
  };
  auto parse_row = [&](std::size_t expected) {
    std::vector<double> values;
    values.reserve(expected);
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto [q, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw ParseError(fmt::format("model file line {}: bad number", line_no), line_no);
      }
      values.push_back(v);
      p = q;
    }
    if (values.size() != expected) {
      throw ParseError(fmt::format("model file line {}: expected {} values, found {}",
                                   line_no, expected, values.size()),
                       line_no);
    }
    return values;
  };

  if (!next_line()) throw SchemaError("model file is empty");
  std::size_t k = 0, v = 0;
  {
    std::istringstream header(line);
    if (!(header >> k >> v) || k < 2 || v < 1) {
      throw ParseError(fmt::format("model file line {}: expected '<K> <V>' header", line_no),
                       line_no);
    }
  }
  SoftmaxModel m = init_model(v, k);
  for (std::size_t c = 0; c < k; ++c) {
    if (!next_line()) throw SchemaError("model file truncated");
    auto row = parse_row(v);
    std::copy(row.begin(), row.end(), m.row(c).begin());
  }
  if (!next_line()) throw SchemaError("model file has no bias row");
  m.bias = parse_row(k);
  return m;
}

SoftmaxModel SoftmaxModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load(in);
}

}  // namespace emojipred::classifier
