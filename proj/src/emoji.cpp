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

#include "emojipred/emoji.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "emojipred/error.hpp"
#include "emojipred/utf8.hpp"

namespace emojipred::emoji {

namespace {

constexpr std::array<std::string_view, kNumCategories> kCategoryOrder = {
    "Happiness", "Love",       "Sadness",  "Anger",         "Fear",
    "Surprise",  "Prayer",     "Calmness", "Confusion",     "Confidence",
    "Sarcasm",   "Embarrassment", "Weariness", "Stress"};

// Category table, row by row, duplicates included.
constexpr TableEntry kTable[] = {
    {"Happiness", "😂"},     {"Happiness", "😊"},     {"Happiness", "😄"},
    {"Love", "😍"},          {"Love", "❤️"},          {"Love", "💕"},
    {"Sadness", "😞"},       {"Sadness", "😭"},       {"Sadness", "😓"},
    {"Anger", "😡"},         {"Anger", "😠"},         {"Anger", "🤬"},
    {"Fear", "😱"},          {"Fear", "😨"},          {"Fear", "😬"},
    {"Surprise", "😲"},      {"Surprise", "😮"},      {"Surprise", "😏"},
    {"Prayer", "🙏"},        {"Prayer", "🙌"},        {"Prayer", "🙄"},
    {"Calmness", "😌"},      {"Calmness", "😏"},      {"Calmness", "😊"},
    {"Confusion", "😕"},     {"Confusion", "😬"},     {"Confusion", "😞"},
    {"Confidence", "😎"},    {"Confidence", "💪"},    {"Confidence", "😏"},
    {"Sarcasm", "😏"},       {"Sarcasm", "😏"},       {"Sarcasm", "🙄"},
    {"Embarrassment", "😳"}, {"Embarrassment", "😏"}, {"Embarrassment", "🙄"},
    {"Weariness", "😞"},     {"Weariness", "😓"},     {"Weariness", "😭"},
    {"Stress", "😓"},        {"Stress", "😞"},        {"Stress", "😭"},
};

bool is_presentation_mark(char32_t c) {
  return (c >= 0xFE00 && c <= 0xFE0F) || c == 0x200D;
}

// Key scalar of an emoji as written: its first scalar that is not a
// variation selector or joiner.
std::optional<char32_t> key_scalar(std::string_view written) {
  for (char32_t c : utf8::decode(written)) {
    if (!is_presentation_mark(c)) return c;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \r");
  return s.substr(b, e - b + 1);
}

class Builder {
 public:
  void add_category(std::string_view name, std::size_t line) {
    std::string n(name);
    if (n.empty()) throw ParseError("empty category name", line);
    if (index_.count(n)) {
      throw ParseError("duplicate category '" + n + "'", line);
    }
    index_.emplace(n, static_cast<int>(categories_.size()));
    categories_.push_back(std::move(n));
  }

  void add_entry(std::string_view written, std::string_view category,
                 std::size_t line) {
    auto it = index_.find(std::string(category));
    if (it == index_.end()) {
      throw MappingError("line " + std::to_string(line) +
                         ": unknown category '" + std::string(category) + "'");
    }
    auto key = key_scalar(written);
    if (!key) throw ParseError("entry has no emoji scalar", line);
    if (!emoji_to_label_.emplace(*key, it->second).second) ++shadowed_;
  }

  std::vector<std::string> categories_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<char32_t, int> emoji_to_label_;
  std::size_t shadowed_ = 0;
};

}  // namespace

EmojiRangeSet::EmojiRangeSet(std::vector<char32_t> singletons)
    : singletons_(std::move(singletons)) {
  std::sort(singletons_.begin(), singletons_.end());
  singletons_.erase(std::unique(singletons_.begin(), singletons_.end()),
                    singletons_.end());
}

bool EmojiRangeSet::in_intervals(char32_t c) const {
  for (const auto& r : kExtractionRanges) {
    if (c >= r.first && c <= r.last) return true;
  }
  return false;
}

bool EmojiRangeSet::contains(char32_t c) const {
  return in_intervals(c) ||
         std::binary_search(singletons_.begin(), singletons_.end(), c);
}

std::span<const TableEntry> table_entries() { return kTable; }

const LabelMap& LabelMap::builtin() {
  static const LabelMap map = [] {
    std::ostringstream src;
    for (auto name : kCategoryOrder) src << "@category\t" << name << '\n';
    for (const auto& e : kTable) src << e.emoji << '\t' << e.category << '\n';
    std::istringstream in(src.str());
    return LabelMap::parse(in);
  }();
  return map;
}

LabelMap LabelMap::parse(std::istream& in) {
  Builder b;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto tab = s.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("expected <emoji>TAB<category> at line " +
                           std::to_string(line),
                       line);
    }
    const auto lhs = trim(s.substr(0, tab));
    const auto rhs = trim(s.substr(tab + 1));
    if (lhs == "@category") {
      b.add_category(rhs, line);
    } else {
      b.add_entry(lhs, rhs, line);
    }
  }
  if (b.categories_.size() < 2) {
    throw SchemaError("label map declares fewer than two categories");
  }

  LabelMap m;
  m.categories_ = std::move(b.categories_);
  m.index_ = std::move(b.index_);
  m.emoji_to_label_ = std::move(b.emoji_to_label_);
  m.shadowed_ = b.shadowed_;
  std::vector<char32_t> outside;
  const EmojiRangeSet plain;
  for (const auto& [scalar, label] : m.emoji_to_label_) {
    if (!plain.in_intervals(scalar)) outside.push_back(scalar);
  }
  m.extraction_ = EmojiRangeSet(std::move(outside));
  return m;
}

LabelMap LabelMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label map " + path.string());
  return parse(in);
}

std::optional<std::string> LabelMap::categorize(char32_t e) const {
  auto l = label_of(e);
  if (!l) return std::nullopt;
  return categories_[*l];
}

std::optional<int> LabelMap::label_of(char32_t e) const {
  auto it = emoji_to_label_.find(e);
  if (it == emoji_to_label_.end()) return std::nullopt;
  return it->second;
}

int LabelMap::encode(std::string_view category) const {
  auto it = index_.find(std::string(category));
  if (it == index_.end()) {
    throw MappingError("unknown category '" + std::string(category) + "'");
  }
  return it->second;
}

const std::string& LabelMap::decode(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= categories_.size()) {
    throw MappingError("label index " + std::to_string(index) +
                       " out of range");
  }
  return categories_[index];
}

std::vector<char32_t> LabelMap::mapped_scalars() const {
  std::vector<char32_t> out;
  out.reserve(emoji_to_label_.size());
  for (const auto& kv : emoji_to_label_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::u32string> extract_emojis(std::u32string_view text,
                                           const EmojiRangeSet& set) {
  std::vector<std::u32string> runs;
  std::u32string current;
  for (char32_t c : text) {
    if (set.contains(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      runs.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) runs.push_back(std::move(current));
  return runs;
}

std::vector<std::string> extract_emojis(std::string_view text,
                                        const EmojiRangeSet& set) {
  std::vector<std::string> out;
  for (const auto& run : extract_emojis(utf8::decode(text), set)) {
    out.push_back(utf8::encode(run));
  }
  return out;
}

std::optional<char32_t> first_emoji(std::string_view text,
                                    const EmojiRangeSet& set) {
  for (char32_t c : utf8::decode(text)) {
    if (set.contains(c)) return c;
  }
  return std::nullopt;
}

std::optional<std::string> categorize(char32_t e, const LabelMap& map) {
  return map.categorize(e);
}

int encode_label(std::string_view category, const LabelMap& map) {
  return map.encode(category);
}

LabelResult label_records(std::span<const TweetRecord> records,
                          const LabelMap& map) {
  LabelResult result;
  result.labeled.reserve(records.size());
  for (const auto& r : records) {
    auto e = first_emoji(r.raw_text, map.extraction_set());
    if (!e) {
      ++result.no_emoji;
      continue;
    }
    auto label = map.label_of(*e);
    if (!label) {
      ++result.unmapped_emoji;
      continue;
    }
    TweetRecord out = r;
    out.emoji = *e;
    out.label = *label;
    result.labeled.push_back(std::move(out));
  }
  return result;
}

}  // namespace emojipred::emoji
