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

#ifndef EMOJIPRED_EMOJI_HPP_
#define EMOJIPRED_EMOJI_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emojipred/record.hpp"

namespace emojipred::emoji {

struct Interval {
  char32_t first;
  char32_t last;  // inclusive
};

// Scalar intervals matched by the extraction pattern, in pattern order.
inline constexpr std::array<Interval, 6> kExtractionRanges = {{
    {0x1F600, 0x1F64F},  // emoticons
    {0x1F300, 0x1F5FF},  // symbols & pictographs
    {0x1F680, 0x1F6FF},  // transport & map
    {0x1F1E0, 0x1F1FF},  // regional indicators
    {0x2700, 0x27BF},    // dingbats
    {0x1F900, 0x1F9FF},  // supplemental symbols & pictographs
}};

inline constexpr int kNumCategories = 14;

// The six extraction intervals plus explicit singleton scalars (mapped emoji
// that fall outside every interval, e.g. U+2764 HEAVY BLACK HEART).
class EmojiRangeSet {
 public:
  EmojiRangeSet() = default;
  explicit EmojiRangeSet(std::vector<char32_t> singletons);

  bool contains(char32_t c) const;
  bool in_intervals(char32_t c) const;
  std::span<const char32_t> singletons() const { return singletons_; }

 private:
  std::vector<char32_t> singletons_;  // sorted, unique
};

// Emoji → category → index mapping. Entries are read in order; an emoji that
// appears more than once keeps its first category, so the mapping is a
// function even though the source table lists some emoji under several rows.
class LabelMap {
 public:
  // The shipped category table.
  static const LabelMap& builtin();
  static LabelMap parse(std::istream& in);
  static LabelMap load(const std::filesystem::path& path);

  std::span<const std::string> categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }

  std::optional<std::string> categorize(char32_t e) const;
  std::optional<int> label_of(char32_t e) const;

  // Throws MappingError for names outside the category list.
  int encode(std::string_view category) const;
  const std::string& decode(int index) const;

  // Mapped scalars in ascending order.
  std::vector<char32_t> mapped_scalars() const;
  // Source entries that lost to an earlier row.
  std::size_t shadowed_entries() const { return shadowed_; }

  // kExtractionRanges plus every mapped scalar outside them.
  const EmojiRangeSet& extraction_set() const { return extraction_; }

 private:
  std::vector<std::string> categories_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<char32_t, int> emoji_to_label_;
  std::size_t shadowed_ = 0;
  EmojiRangeSet extraction_;
};

// The raw category table rows in source order (category, emoji as written).
struct TableEntry {
  std::string_view category;
  std::string_view emoji;
};
std::span<const TableEntry> table_entries();

// Maximal runs of consecutive scalars in `set`, in text order.
std::vector<std::u32string> extract_emojis(std::u32string_view text,
                                           const EmojiRangeSet& set);
std::vector<std::string> extract_emojis(
    std::string_view text,
    const EmojiRangeSet& set = LabelMap::builtin().extraction_set());

// First scalar of the first run, if any.
std::optional<char32_t> first_emoji(
    std::string_view text,
    const EmojiRangeSet& set = LabelMap::builtin().extraction_set());

std::optional<std::string> categorize(char32_t e, const LabelMap& map);
int encode_label(std::string_view category, const LabelMap& map);

struct LabelResult {
  std::vector<TweetRecord> labeled;
  std::size_t unmapped_emoji = 0;
  std::size_t no_emoji = 0;
};

// Labels each record from the first emoji of its raw text. Records whose
// first emoji is unmapped are dropped and counted; records without any emoji
// are dropped and counted separately.
LabelResult label_records(std::span<const TweetRecord> records,
                          const LabelMap& map);

}  // namespace emojipred::emoji

#endif  // EMOJIPRED_EMOJI_HPP_
