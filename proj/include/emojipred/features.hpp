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

#ifndef EMOJIPRED_FEATURES_HPP_
#define EMOJIPRED_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emojipred::features {

using Document = std::vector<std::string>;

// Splits on Unicode whitespace; tokens are otherwise kept verbatim.
Document tokenize(std::string_view text);

// Sparse vector with strictly increasing indices and no stored zeros.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  std::size_t dim = 0;

  std::size_t nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  double norm() const;
};

// Fitted TF-IDF vocabulary. Indices follow byte-wise token order, so the
// model depends only on the multiset of training documents.
class TfidfModel {
 public:
  std::size_t num_docs() const { return num_docs_; }
  std::size_t vocab_size() const { return tokens_.size(); }

  std::optional<std::uint32_t> index_of(std::string_view token) const;
  const std::string& token(std::uint32_t index) const { return tokens_[index]; }
  std::size_t doc_freq(std::uint32_t index) const { return doc_freq_[index]; }
  double idf(std::uint32_t index) const { return idf_[index]; }

  // ln((1 + N) / (1 + df)) + 1
  static double smoothed_idf(std::size_t num_docs, std::size_t doc_freq);

  // Header `N<TAB>V`, then `token<TAB>index<TAB>df` per entry. Lines starting
  // with '#' before the header are comments. idf is recomputed on load.
  void save(std::ostream& out, std::string_view comment = {}) const;
  void save(const std::filesystem::path& path, std::string_view comment = {}) const;
  static TfidfModel load(std::istream& in);
  static TfidfModel load(const std::filesystem::path& path);

 private:
  friend TfidfModel fit_tfidf(std::span<const Document> docs);

  void finalize();

  std::size_t num_docs_ = 0;
  std::vector<std::string> tokens_;
  std::vector<std::size_t> doc_freq_;
  std::vector<double> idf_;
  std::map<std::string, std::uint32_t, std::less<>> vocabulary_;
};

// Throws FitError when no document has a token.
TfidfModel fit_tfidf(std::span<const Document> docs);

// Raw counts × idf over in-vocabulary tokens, L2-normalized. Documents with no
// known token map to the empty vector.
SparseVector transform(const TfidfModel& model, const Document& doc);

}  // namespace emojipred::features

#endif  // EMOJIPRED_FEATURES_HPP_
