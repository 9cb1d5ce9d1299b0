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

#ifndef EMOJIPRED_NORMALIZE_HPP_
#define EMOJIPRED_NORMALIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace emojipred::normalize {

struct CleaningConfig {
  bool remove_mentions = true;
  bool remove_hashtags = true;
  std::vector<char32_t> strip_symbols = {U'&', U'*', U'%'};
  bool collapse_ellipsis = true;
  int elongation_max_run = 1;  // >= 1
  // Also strip pictographs the extraction ranges do not cover (U+2600..27BF
  // symbols, U+2B00..2BFF, U+1FA70..1FAFF) plus variation selectors, ZWJ and
  // keycap marks. Scalars inside the extraction set are always stripped.
  bool strip_unmapped_emoji = true;

  void validate() const;
};

// Screening pass applied to raw tweet text before tokenization. Idempotent.
// Order: emoji → space, symbols dropped, dot runs (length ≥ 2) → space,
// @mention / #hashtag tokens dropped, elongations collapsed, whitespace
// squeezed and trimmed.
std::string clean_text(std::string_view raw, const CleaningConfig& config = {});

// Shortens every run of one repeated Arabic letter (U+0600..U+06FF, digits
// excluded) longer than `max_run` to exactly `max_run` occurrences.
std::string collapse_elongation(std::string_view text, int max_run);
std::u32string collapse_elongation(std::u32string_view text, int max_run);

bool is_arabic_letter(char32_t c);

}  // namespace emojipred::normalize

#endif  // EMOJIPRED_NORMALIZE_HPP_
