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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "emojipred/error.hpp"
#include "emojipred/utf8.hpp"

namespace emojipred::features {

Document tokenize(std::string_view text) {
  Document tokens;
  std::string cur;
  const std::u32string scalars = utf8::decode(text);
  for (char32_t c : scalars) {
    if (utf8::is_space(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      utf8::append(cur, c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

double SparseVector::norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

double TfidfModel::smoothed_idf(std::size_t num_docs, std::size_t doc_freq) {
  return std::log((1.0 + static_cast<double>(num_docs)) /
                  (1.0 + static_cast<double>(doc_freq))) +
         1.0;
}

std::optional<std::uint32_t> TfidfModel::index_of(std::string_view token) const {
  auto it = vocabulary_.find(token);
  if (it == vocabulary_.end()) return std::nullopt;
  return it->second;
}

void TfidfModel::finalize() {
  vocabulary_.clear();
  idf_.resize(tokens_.size());
  for (std::uint32_t i = 0; i < tokens_.size(); ++i) {
    vocabulary_.emplace(tokens_[i], i);
    idf_[i] = smoothed_idf(num_docs_, doc_freq_[i]);
  }
}

TfidfModel fit_tfidf(std::span<const Document> docs) {
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : docs) {
    std::set<std::string_view> seen(doc.begin(), doc.end());
    for (auto t : seen) {
      auto it = df.find(t);
      if (it == df.end()) {
        df.emplace(std::string(t), 1);
      } else {
        ++it->second;
      }
    }
  }
  if (df.empty()) throw FitError("cannot fit TF-IDF: every document is empty");

  TfidfModel m;
  m.num_docs_ = docs.size();
  m.tokens_.reserve(df.size());
  m.doc_freq_.reserve(df.size());
  for (auto& [token, count] : df) {
    m.tokens_.push_back(token);
    m.doc_freq_.push_back(count);
  }
  m.finalize();
  return m;
}

SparseVector transform(const TfidfModel& model, const Document& doc) {
  std::vector<std::uint32_t> hits;
  hits.reserve(doc.size());
  for (const auto& t : doc) {
    if (auto i = model.index_of(t)) hits.push_back(*i);
  }
  std::sort(hits.begin(), hits.end());

  SparseVector v;
  v.dim = model.vocab_size();
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    v.indices.push_back(hits[i]);
    v.values.push_back(static_cast<double>(j - i) * model.idf(hits[i]));
    i = j;
  }
  const double n = v.norm();
  if (n > 0.0) {
    for (double& x : v.values) x /= n;
  }
  return v;
}

void TfidfModel::save(std::ostream& out, std::string_view comment) const {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << num_docs_ << '\t' << tokens_.size() << '\n';
  for (std::uint32_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i] << '\t' << i << '\t' << doc_freq_[i] << '\n';
  }
}

void TfidfModel::save(const std::filesystem::path& path,
                      std::string_view comment) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  save(out, comment);
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(fmt::format("feature file line {}: bad number '{}'", line, s),
                     line);
  }
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto tab = s.find('\t', start);
    parts.push_back(s.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return parts;
}

}  // namespace

TfidfModel TfidfModel::load(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  std::size_t expected = 0;
  TfidfModel m;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (!have_header) {
      if (raw.empty() || raw.front() == '#') continue;
      auto parts = split_tabs(raw);
      if (parts.size() != 2) {
        throw ParseError(fmt::format("feature file line {}: expected N<TAB>V", line),
                         line);
      }
      m.num_docs_ = parse_number<std::size_t>(parts[0], line);
      expected = parse_number<std::size_t>(parts[1], line);
      have_header = true;
      continue;
    }
    if (raw.empty()) continue;
    auto parts = split_tabs(raw);
    if (parts.size() != 3) {
      throw ParseError(
          fmt::format("feature file line {}: expected token<TAB>index<TAB>df", line),
          line);
    }
    const auto index = parse_number<std::size_t>(parts[1], line);
    const auto df = parse_number<std::size_t>(parts[2], line);
    if (index != m.tokens_.size()) {
      throw ParseError(fmt::format("feature file line {}: index {} out of order",
                                   line, index),
                       line);
    }
    if (df == 0 || df > m.num_docs_) {
      throw ParseError(fmt::format("feature file line {}: df {} outside [1, N]",
                                   line, df),
                       line);
    }
    if (!m.tokens_.empty() && !(m.tokens_.back() < parts[0])) {
      throw ParseError(fmt::format("feature file line {}: token out of byte order",
                                   line),
                       line);
    }
    m.tokens_.emplace_back(parts[0]);
    m.doc_freq_.push_back(df);
  }
  if (!have_header) throw SchemaError("feature file has no header");
  if (m.tokens_.size() != expected) {
    throw SchemaError(fmt::format("feature file declares V={} but lists {}",
                                  expected, m.tokens_.size()));
  }
  m.finalize();
  if (m.vocabulary_.size() != m.tokens_.size()) {
    throw SchemaError("feature file repeats a token");
  }
  return m;
}

TfidfModel TfidfModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load(in);
}

}  // namespace emojipred::features
