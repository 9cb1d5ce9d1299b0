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

#ifndef EMOJIPRED_CSV_HPP_
#define EMOJIPRED_CSV_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emojipred::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line the record starts on
  bool well_formed = true;
};

// Streaming RFC-4180 reader. Quoted fields may span lines; a leading UTF-8
// byte-order mark is skipped. Ill-formed records (stray or unterminated
// quotes) are still returned, flagged, so callers decide whether to skip.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::optional<Row> next();

 private:
  int get();
  int peek();

  std::istream& in_;
  std::size_t line_ = 1;
  bool started_ = false;
};

// Quotes a field only when it contains a comma, quote or line break.
std::string quote(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);

// Index of `name` in a header row, if present.
std::optional<std::size_t> column(const std::vector<std::string>& header,
                                  std::string_view name);

}  // namespace emojipred::csv

#endif  // EMOJIPRED_CSV_HPP_
