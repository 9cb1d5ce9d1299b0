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

#include "emojipred/csv.hpp"

#include <algorithm>

namespace emojipred::csv {

int Reader::get() {
  const int c = in_.get();
  if (c == '\n') ++line_;
  return c;
}

int Reader::peek() { return in_.peek(); }

std::optional<Row> Reader::next() {
  if (!started_) {
    started_ = true;
    if (peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (in_.gcount() != 3 || static_cast<unsigned char>(bom[1]) != 0xBB ||
          static_cast<unsigned char>(bom[2]) != 0xBF) {
        in_.clear();
        in_.seekg(0);
      }
    }
  }
  if (peek() == std::char_traits<char>::eof()) return std::nullopt;

  Row row;
  row.line = line_;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  bool after_quote = false;  // closing quote seen, expecting , or EOL

  for (;;) {
    const int c = get();
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) row.well_formed = false;
      row.fields.push_back(std::move(field));
      return row;
    }
    if (in_quotes) {
      if (c == '"') {
        if (peek() == '"') {
          get();
          field.push_back('"');
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      was_quoted = after_quote = false;
      continue;
    }
    if (c == '\r' && peek() == '\n') continue;
    if (c == '\n') {
      row.fields.push_back(std::move(field));
      return row;
    }
    if (c == '"') {
      if (field.empty() && !was_quoted) {
        in_quotes = was_quoted = true;
      } else {
        row.well_formed = false;
        field.push_back('"');
      }
      continue;
    }
    if (after_quote) row.well_formed = false;
    field.push_back(static_cast<char>(c));
  }
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << quote(fields[i]);
  }
  out << '\n';
}

std::optional<std::size_t> column(const std::vector<std::string>& header,
                                  std::string_view name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace emojipred::csv
