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

#include <algorithm>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "emojipred/emoji.hpp"
#include "emojipred/error.hpp"
#include "emojipred/rng.hpp"
#include "test_util.hpp"

namespace emojipred::metrics {
namespace {

std::vector<ClassMetrics> published_metrics() {
  std::vector<ClassMetrics> out;
  for (const auto& r : testing::published_results()) {
    ClassMetrics m;
    m.precision = r.precision;
    m.recall = r.recall;
    m.f1 = r.f1;
    m.support = r.support;
    out.push_back(m);
  }
  return out;
}

const std::vector<int> kTrue = {0, 0, 1, 1, 2, 2};
const std::vector<int> kPred = {0, 1, 1, 1, 2, 0};

TEST(ConfusionTest, HandCounted) {
  const auto cm = confusion_matrix(kTrue, kPred, 3);
  const std::size_t expected[3][3] = {{1, 1, 0}, {0, 2, 0}, {1, 0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(cm.at(i, j), expected[i][j]);
  }
  EXPECT_EQ(cm.total(), 6u);
  EXPECT_EQ(cm.trace(), 4u);
  EXPECT_NEAR(accuracy(cm), 4.0 / 6.0, 1e-15);
}

TEST(ConfusionTest, EmptyAndErrors) {
  const auto cm = confusion_matrix({}, {}, 4);
  EXPECT_EQ(cm.total(), 0u);
  EXPECT_THROW(accuracy(cm), PreconditionError);
  const std::vector<int> a = {0, 1}, b = {0}, bad = {0, 3};
  EXPECT_THROW(confusion_matrix(a, b, 3), BoundsError);
  EXPECT_THROW(confusion_matrix(a, bad, 3), BoundsError);
  EXPECT_THROW(confusion_matrix(bad, a, 3), BoundsError);
}

TEST(ConfusionTest, DiagonalAndZeroDiagonal) {
  const std::vector<int> y = {0, 1, 1, 2};
  const std::vector<int> shifted = {1, 2, 2, 0};
  EXPECT_EQ(accuracy(confusion_matrix(y, y, 3)), 1.0);
  EXPECT_EQ(accuracy(confusion_matrix(y, shifted, 3)), 0.0);
  const auto cm = confusion_matrix(y, y, 3);
  EXPECT_EQ(cm.row_sum(1), 2u);
  EXPECT_EQ(cm.at(1, 1), 2u);
}

TEST(ClassMetricsTest, HandEvaluated) {
  const auto m = class_metrics(confusion_matrix(kTrue, kPred, 3));
  EXPECT_DOUBLE_EQ(m[0].precision, 0.5);
  EXPECT_DOUBLE_EQ(m[0].recall, 0.5);
  EXPECT_DOUBLE_EQ(m[0].f1, 0.5);
  EXPECT_DOUBLE_EQ(m[1].precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[1].recall, 1.0);
  EXPECT_DOUBLE_EQ(m[1].f1, 0.8);
  EXPECT_DOUBLE_EQ(m[2].precision, 1.0);
  EXPECT_DOUBLE_EQ(m[2].recall, 0.5);
  EXPECT_DOUBLE_EQ(m[2].f1, 2.0 / 3.0);
  EXPECT_EQ(m[2].support, 2u);
}

TEST(ClassMetricsTest, ZeroDivisionConvention) {
  const std::vector<int> y = {0, 0};
  const auto m = class_metrics(confusion_matrix(y, y, 2));
  EXPECT_EQ(m[1].precision, 0.0);
  EXPECT_EQ(m[1].recall, 0.0);
  EXPECT_EQ(m[1].f1, 0.0);
  EXPECT_EQ(m[1].support, 0u);
  EXPECT_TRUE(m[1].precision_undefined);
  EXPECT_TRUE(m[1].recall_undefined);
  EXPECT_FALSE(m[0].precision_undefined);
}

TEST(F1Test, FormulaAndPrintedCells) {
  EXPECT_NEAR(f1_score(0.84, 0.87), 2 * 0.84 * 0.87 / (0.84 + 0.87), 1e-15);
  EXPECT_NEAR(f1_score(0.84, 0.87), 0.8547, 1e-4);
  // The printed F1 cells of classes 0, 1 and 4 disagree with their own P and R.
  const auto t = testing::published_results();
  EXPECT_NEAR(f1_score(t[0].precision, t[0].recall), 0.7107, 1e-4);
  EXPECT_GT(std::abs(f1_score(t[0].precision, t[0].recall) - t[0].f1), 0.04);
  EXPECT_GT(std::abs(f1_score(t[1].precision, t[1].recall) - t[1].f1), 0.005);
  EXPECT_NEAR(f1_score(t[4].precision, t[4].recall), 0.8199, 1e-4);
  EXPECT_EQ(f1_score(0.0, 0.0), 0.0);
}

TEST(F1Test, BoundedByPrecisionAndRecall) {
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const double p = rng.unit(), r = rng.unit();
    const double f = f1_score(p, r);
    EXPECT_LE(std::min(p, r), f + 1e-15);
    EXPECT_GE(std::max(p, r), f - 1e-15);
    EXPECT_NEAR(f1_score(p, p), p, 1e-15);
  }
}

TEST(AverageTest, MacroOverPrintedColumns) {
  const auto macro = macro_avg(published_metrics());
  EXPECT_NEAR(macro.precision, 0.5814, 5e-4);
  EXPECT_NEAR(macro.recall, 0.7429, 5e-4);
  EXPECT_NEAR(macro.f1, 0.6421, 5e-4);
  EXPECT_EQ(format2(macro.precision), "0.58");
  EXPECT_EQ(format2(macro.recall), "0.74");
  EXPECT_EQ(format2(macro.f1), "0.64");
  EXPECT_THROW(macro_avg({}), PreconditionError);
}

TEST(AverageTest, SupportColumnSums) {
  std::size_t total = 0;
  for (const auto& m : published_metrics()) total += m.support;
  EXPECT_EQ(total, 3203u);
}

TEST(AverageTest, Weighted) {
  std::vector<ClassMetrics> m(2);
  m[0].precision = 1.0;
  m[0].support = 3;
  m[1].precision = 0.0;
  m[1].support = 1;
  EXPECT_DOUBLE_EQ(weighted_avg(m).precision, 0.75);
  m[0].support = m[1].support = 0;
  EXPECT_EQ(weighted_avg(m).precision, 0.0);
}

TEST(ReportTest, PropertiesOnRandomPairs) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.below(13);
    std::vector<int> y, p;
    for (std::size_t i = 0, n = 1 + rng.below(300); i < n; ++i) {
      y.push_back(static_cast<int>(rng.below(k)));
      p.push_back(static_cast<int>(rng.below(k)));
    }
    const auto report = evaluate(y, p, k);
    std::size_t support = 0, matches = 0;
    for (std::size_t c = 0; c < k; ++c) {
      EXPECT_EQ(report.per_class[c].support, report.confusion.row_sum(c));
      support += report.per_class[c].support;
    }
    for (std::size_t i = 0; i < y.size(); ++i) matches += y[i] == p[i];
    EXPECT_EQ(support, report.evaluated_count);
    EXPECT_DOUBLE_EQ(report.accuracy, static_cast<double>(matches) / y.size());
    // Permuting the pairs leaves the report unchanged.
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span(order));
    std::vector<int> ys, ps;
    for (auto i : order) {
      ys.push_back(y[i]);
      ps.push_back(p[i]);
    }
    EXPECT_EQ(render_report(evaluate(ys, ps, k)), render_report(report));
  }
}

TEST(FormatTest, RoundHalfUp) {
  EXPECT_EQ(format2(0.8547), "0.85");
  EXPECT_EQ(format2(0.125), "0.13");
  EXPECT_EQ(format2(0.675), "0.68");
  EXPECT_EQ(format2(0.005), "0.01");
  EXPECT_EQ(format2(0.0), "0.00");
  EXPECT_EQ(format2(1.0), "1.00");
  EXPECT_EQ(format2(0.994999), "0.99");
}

TEST(RenderTest, ClassRowLayout) {
  EvalReport report;
  report.per_class = published_metrics();
  for (auto& m : report.per_class) m.f1 = f1_score(m.precision, m.recall);
  report.evaluated_count = 3203;
  const auto text = render_report(report);
  EXPECT_EQ(text.rfind("Class  Precision  Recall  F1-score  Support\n", 0), 0u);
  EXPECT_NE(text.find("\n1  0.84  0.87  0.85  1393\n"), std::string::npos);
  EXPECT_NE(text.find("\nevaluated  3203\n"), std::string::npos);
}

TEST(RenderTest, SingleClassPerfect) {
  const std::vector<int> y(7, 0);
  const auto text = render_report(evaluate(y, y, 1));
  EXPECT_NE(text.find("\n0  1.00  1.00  1.00  7\n"), std::string::npos);
  EXPECT_NE(text.find("\naccuracy  1.00  7\n"), std::string::npos);
}

class ScoreExternalTest : public ::testing::Test {
 protected:
  const emoji::LabelMap& map = emoji::LabelMap::builtin();
  EvalReport score(const std::string& csv, std::span<const TweetRecord> test) {
    std::istringstream in(csv);
    return score_external(in, test, map);
  }
  static std::vector<TweetRecord> uniform_test(std::size_t per_class) {
    std::vector<TweetRecord> out;
    for (std::size_t i = 0; i < 14 * per_class; ++i) {
      out.push_back({"r" + std::to_string(i), "x", {}, {}, static_cast<int>(i % 14)});
    }
    return out;
  }
};

TEST_F(ScoreExternalTest, CoversSubsetOfTestIds) {
  const auto f = testing::external_fixture();
  ASSERT_EQ(f.test.size(), 4695u);
  const auto report = score(f.predictions_csv, f.test);
  EXPECT_EQ(report.evaluated_count, 3203u);
  EXPECT_EQ(report.unpredicted_records, 4695u - 3203u);
  EXPECT_EQ(report.accuracy, 1.0);
  const auto t = testing::published_results();
  for (std::size_t c = 0; c < 14; ++c) EXPECT_EQ(report.per_class[c].support, t[c].support);
  EXPECT_NE(render_report(report).find("\nevaluated  3203\n"), std::string::npos);
}

TEST_F(ScoreExternalTest, ConstantPredictor) {
  const auto test = uniform_test(10);
  std::string csv = "id,predicted\n";
  for (const auto& r : test) csv += r.id + "," + map.categories()[0] + "\n";
  EXPECT_NEAR(score(csv, test).accuracy, 1.0 / 14.0, 1e-15);
}

TEST_F(ScoreExternalTest, NamesAndIndicesAgree) {
  const auto test = uniform_test(2);
  std::string by_name = "predicted,id\n", by_index = "id,predicted\n";
  for (const auto& r : test) {
    by_name += map.categories()[(*r.label + 1) % 14] + "," + r.id + "\n";
    by_index += r.id + "," + std::to_string((*r.label + 1) % 14) + "\n";
  }
  EXPECT_EQ(score(by_name, test).confusion, score(by_index, test).confusion);
}

TEST_F(ScoreExternalTest, UnknownIdsAreSkipped) {
  const auto test = uniform_test(1);
  const auto report = score("id,predicted\nr0,0\nghost,3\nr1,1\n", test);
  EXPECT_EQ(report.evaluated_count, 2u);
  EXPECT_EQ(report.skipped_unknown_ids, 1u);
}

TEST_F(ScoreExternalTest, MalformedRowsNameTheLine) {
  const auto test = uniform_test(1);
  const std::string good = "id,predicted\nr0,0\nr1,1\nr2,2\nr3,3\nr4,4\n";
  for (const std::string bad : {"r5\n", "r5,\n", "r5,99\n", "r5,NotACategory\n",
                                "r5,1,extra\n", "r0,1\n"}) {
    try {
      score(good + bad, test);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 7u) << bad;
    }
  }
  EXPECT_THROW(score("id,label\n", test), SchemaError);
}

}  // namespace
}  // namespace emojipred::metrics
