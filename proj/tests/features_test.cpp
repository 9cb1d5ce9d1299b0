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

#include "emojipred/features.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "emojipred/error.hpp"
#include "emojipred/rng.hpp"

namespace emojipred::features {
namespace {

double weight_of(const SparseVector& v, std::uint32_t index) {
  for (std::size_t k = 0; k < v.nnz(); ++k) {
    if (v.indices[k] == index) return v.values[k];
  }
  return 0.0;
}

std::vector<Document> random_corpus(Rng& rng, std::size_t n) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    Document d = {"common"};
    for (std::size_t j = 0, len = rng.below(12); j < len; ++j) {
      // Zipf-ish: low ids are frequent.
      const auto id = rng.below(1 + rng.below(300));
      d.push_back("w" + std::to_string(id));
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

TEST(TokenizeTest, Examples) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("a  b\tc"), (Document{"a", "b", "c"}));
  EXPECT_EQ(tokenize(" احبك كثير "), (Document{"احبك", "كثير"}));
}

TEST(FitTest, TwoDocuments) {
  const std::vector<Document> docs = {{"a", "b"}, {"a"}};
  const auto m = fit_tfidf(docs);
  EXPECT_EQ(m.num_docs(), 2u);
  ASSERT_EQ(m.vocab_size(), 2u);
  const auto a = *m.index_of("a");
  const auto b = *m.index_of("b");
  EXPECT_EQ(m.doc_freq(a), 2u);
  EXPECT_EQ(m.doc_freq(b), 1u);
  EXPECT_EQ(m.idf(a), 1.0);
  EXPECT_NEAR(m.idf(b), std::log(3.0 / 2.0) + 1.0, 1e-15);
  EXPECT_NEAR(m.idf(b), 1.4055, 1e-4);
}

TEST(FitTest, SingleDocument) {
  const std::vector<Document> docs = {{"x"}};
  const auto m = fit_tfidf(docs);
  EXPECT_EQ(m.vocab_size(), 1u);
  EXPECT_EQ(m.idf(0), 1.0);
}

TEST(FitTest, DocFreqCountsDocumentsNotOccurrences) {
  const std::vector<Document> docs = {{"a", "a", "a"}, {"b"}, {"b", "a"}};
  const auto m = fit_tfidf(docs);
  EXPECT_EQ(m.doc_freq(*m.index_of("a")), 2u);
  EXPECT_EQ(m.doc_freq(*m.index_of("b")), 2u);
}

TEST(FitTest, IndicesFollowByteOrderAndIgnoreDocOrder) {
  const std::vector<Document> docs = {{"zeta", "alpha"}, {"ب", "mid"}};
  const std::vector<Document> reversed = {{"ب", "mid"}, {"alpha", "zeta"}};
  const auto m = fit_tfidf(docs);
  EXPECT_EQ(m.token(0), "alpha");
  EXPECT_EQ(m.token(1), "mid");
  EXPECT_EQ(m.token(2), "zeta");
  EXPECT_EQ(m.token(3), "ب");
  std::ostringstream x, y;
  m.save(x);
  fit_tfidf(reversed).save(y);
  EXPECT_EQ(x.str(), y.str());
}

TEST(FitTest, AllEmptyIsAnError) {
  const std::vector<Document> none;
  const std::vector<Document> empties = {{}, {}};
  EXPECT_THROW(fit_tfidf(none), FitError);
  EXPECT_THROW(fit_tfidf(empties), FitError);
}

TEST(TransformTest, WorkedExample) {
  const std::vector<Document> docs = {{"a", "b"}, {"a"}};
  const auto m = fit_tfidf(docs);
  const auto v = transform(m, {"a", "b"});
  const double idf_b = std::log(1.5) + 1.0;
  const double norm = std::sqrt(1.0 + idf_b * idf_b);
  EXPECT_NEAR(norm, 1.7250, 1e-4);
  EXPECT_NEAR(weight_of(v, *m.index_of("a")), 1.0 / norm, 1e-12);
  EXPECT_NEAR(weight_of(v, *m.index_of("b")), idf_b / norm, 1e-12);
  EXPECT_NEAR(weight_of(v, *m.index_of("a")), 0.5797, 1e-4);
  EXPECT_NEAR(weight_of(v, *m.index_of("b")), 0.8148, 1e-4);
  EXPECT_EQ(v.dim, 2u);
}

TEST(TransformTest, OutOfVocabulary) {
  const std::vector<Document> docs = {{"a", "b"}, {"a"}};
  const auto m = fit_tfidf(docs);
  EXPECT_TRUE(transform(m, {"q", "r"}).empty());
  EXPECT_TRUE(transform(m, {}).empty());
  const auto v = transform(m, {"a", "zzz"});
  ASSERT_EQ(v.nnz(), 1u);
  EXPECT_EQ(v.values[0], 1.0);
}

TEST(TransformTest, RawCountsScaleWeights) {
  const std::vector<Document> docs = {{"a", "b"}, {"b"}};
  const auto m = fit_tfidf(docs);
  const auto v = transform(m, {"a", "b", "b", "b"});
  const double wa = 1.0 * m.idf(*m.index_of("a"));
  const double wb = 3.0 * m.idf(*m.index_of("b"));
  EXPECT_NEAR(weight_of(v, *m.index_of("a")) / weight_of(v, *m.index_of("b")),
              wa / wb, 1e-12);
}

TEST(TfidfPropertyTest, RandomCorpusInvariants) {
  Rng rng(2024);
  const auto docs = random_corpus(rng, 1000);
  const auto m = fit_tfidf(docs);
  EXPECT_EQ(m.idf(*m.index_of("common")), 1.0);
  for (const auto& d : docs) {
    const auto v = transform(m, d);
    ASSERT_FALSE(v.empty());
    EXPECT_NEAR(v.norm(), 1.0, 1e-9);
    for (std::size_t k = 0; k < v.nnz(); ++k) {
      ASSERT_LT(v.indices[k], m.vocab_size());
      if (k) {
        ASSERT_LT(v.indices[k - 1], v.indices[k]);
      }
    }
  }
  for (std::uint32_t i = 0; i < m.vocab_size(); ++i) {
    for (std::uint32_t j = 0; j < m.vocab_size(); ++j) {
      if (m.doc_freq(i) < m.doc_freq(j)) {
        ASSERT_GT(m.idf(i), m.idf(j));
      }
    }
  }
}

TEST(TfidfPropertyTest, TestDocumentsNeverGrowVocabulary) {
  Rng rng(7);
  const auto train = random_corpus(rng, 200);
  const auto m = fit_tfidf(train);
  const auto before = m.vocab_size();
  auto test = random_corpus(rng, 200);
  test.push_back({"never", "seen"});
  for (const auto& d : test) {
    for (auto i : transform(m, d).indices) ASSERT_LT(i, before);
  }
  EXPECT_EQ(m.vocab_size(), before);
}

TEST(TfidfIoTest, SaveLoadRoundTrip) {
  Rng rng(3);
  const auto docs = random_corpus(rng, 50);
  const auto m = fit_tfidf(docs);
  std::stringstream buf;
  m.save(buf, "emojipred test");
  EXPECT_EQ(buf.str().rfind("# emojipred test\n", 0), 0u);
  const auto back = TfidfModel::load(buf);
  ASSERT_EQ(back.vocab_size(), m.vocab_size());
  EXPECT_EQ(back.num_docs(), m.num_docs());
  for (std::uint32_t i = 0; i < m.vocab_size(); ++i) {
    EXPECT_EQ(back.token(i), m.token(i));
    EXPECT_EQ(back.doc_freq(i), m.doc_freq(i));
    EXPECT_EQ(back.idf(i), m.idf(i));
  }
  for (const auto& d : docs) {
    EXPECT_EQ(transform(back, d).values, transform(m, d).values);
  }
}

TEST(TfidfIoTest, RejectsCorruptFiles) {
  for (const char* text : {"", "2\t1\na\t0\t1\nb\t1\t1\n", "1\t1\na\t0\t5\n",
                           "1\t2\nb\t0\t1\na\t1\t1\n", "1\t1\na\t3\t1\n", "x\ty\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(TfidfModel::load(in), Error) << text;
  }
}

}  // namespace
}  // namespace emojipred::features
