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

#include "emojipred/normalize.hpp"

#include <algorithm>

#include "emojipred/emoji.hpp"
#include "emojipred/error.hpp"
#include "emojipred/utf8.hpp"

namespace emojipred::normalize {

namespace {

bool is_emoji_adjacent(char32_t c) {
  return (c >= 0x2600 && c <= 0x27BF) || (c >= 0x2B00 && c <= 0x2BFF) ||
         (c >= 0x1FA70 && c <= 0x1FAFF) || (c >= 0xFE00 && c <= 0xFE0F) ||
         c == 0x200D || c == 0x20E3;
}

std::vector<std::u32string> split_ws(const std::u32string& s) {
  std::vector<std::u32string> tokens;
  std::u32string cur;
  for (char32_t c : s) {
    if (utf8::is_space(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace

void CleaningConfig::validate() const {
  if (elongation_max_run < 1) {
    throw ConfigError("elongation_max_run must be >= 1");
  }
}

bool is_arabic_letter(char32_t c) {
  if (c < 0x0600 || c > 0x06FF) return false;
  const bool digit = (c >= 0x0660 && c <= 0x0669) || (c >= 0x06F0 && c <= 0x06F9);
  return !digit;
}

std::u32string collapse_elongation(std::u32string_view text, int max_run) {
  if (max_run < 1) throw ConfigError("max_run must be >= 1");
  std::u32string out;
  out.reserve(text.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    run = (i > 0 && text[i - 1] == c) ? run + 1 : 1;
    if (is_arabic_letter(c) && run > static_cast<std::size_t>(max_run)) {
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string collapse_elongation(std::string_view text, int max_run) {
  return utf8::encode(collapse_elongation(utf8::decode(text), max_run));
}

std::string clean_text(std::string_view raw, const CleaningConfig& config) {
  config.validate();
  const auto& emoji_set = emoji::LabelMap::builtin().extraction_set();

  std::u32string s;
  {
    const std::u32string in = utf8::decode(raw);
    s.reserve(in.size());
    for (char32_t c : in) {
      if (emoji_set.contains(c) ||
          (config.strip_unmapped_emoji && is_emoji_adjacent(c))) {
        s.push_back(U' ');
      } else if (std::find(config.strip_symbols.begin(),
                           config.strip_symbols.end(),
                           c) != config.strip_symbols.end()) {
        continue;
      } else {
        s.push_back(c);
      }
    }
  }

  if (config.collapse_ellipsis) {
    std::u32string t;
    t.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
      if (s[i] == U'.') {
        std::size_t j = i;
        while (j < s.size() && s[j] == U'.') ++j;
        if (j - i >= 2) {
          t.push_back(U' ');
        } else {
          t.push_back(U'.');
        }
        i = j;
      } else {
        t.push_back(s[i++]);
      }
    }
    s = std::move(t);
  }

  std::u32string out;
  for (auto& token : split_ws(s)) {
    if (config.remove_mentions && token.front() == U'@') continue;
    if (config.remove_hashtags && token.front() == U'#') continue;
    auto collapsed = collapse_elongation(token, config.elongation_max_run);
    if (!out.empty()) out.push_back(U' ');
    out += collapsed;
  }
  return utf8::encode(out);
}

}  // namespace emojipred::normalize
