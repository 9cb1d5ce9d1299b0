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

#include "emojipred/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>

#include "emojipred/csv.hpp"
#include "emojipred/error.hpp"
#include "emojipred/rng.hpp"
#include "emojipred/utf8.hpp"

namespace emojipred::corpus {

namespace {

bool is_blank(std::string_view s) {
  for (char32_t c : utf8::decode(s)) {
    if (!utf8::is_space(c)) return false;
  }
  return true;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

IngestResult ingest_csv(const std::filesystem::path& path,
                        const emoji::EmojiRangeSet& emoji_set) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return ingest_csv(in, emoji_set);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

IngestResult ingest_csv(std::istream& in,
                        const emoji::EmojiRangeSet& emoji_set) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw SchemaError("missing header row");
  const auto text_col = csv::column(header->fields, "text");
  if (!text_col) throw SchemaError("header has no `text` column");
  const auto id_col = csv::column(header->fields, "id");
  const auto emoji_col = csv::column(header->fields, "emoji");
  const auto label_col = csv::column(header->fields, "label");
  const std::size_t width = header->fields.size();

  IngestResult result;
  auto& stats = result.stats;
  std::size_t row_number = 0;
  while (auto row = reader.next()) {
    ++row_number;
    if (!row->well_formed || row->fields.size() != width) {
      ++stats.malformed;
      continue;
    }
    const std::string& text = row->fields[*text_col];
    ++stats.total_ingested;
    if (is_blank(text)) {
      ++stats.dropped_empty;
      continue;
    }
    TweetRecord rec;
    rec.id = id_col ? row->fields[*id_col] : std::to_string(row_number);
    rec.raw_text = text;
    if (emoji_col && !row->fields[*emoji_col].empty()) {
      auto scalars = utf8::decode(row->fields[*emoji_col]);
      rec.emoji = scalars.front();
    }
    if (label_col && !row->fields[*label_col].empty()) {
      auto label = parse_int(row->fields[*label_col]);
      if (!label || *label < 0) {
        --stats.total_ingested;
        ++stats.malformed;
        continue;
      }
      rec.label = *label;
    }
    if (emoji::first_emoji(rec.raw_text, emoji_set)) {
      ++stats.with_emoji;
    } else {
      ++stats.without_emoji;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

FilterResult filter_emoji_bearing(std::span<const TweetRecord> records,
                                  const emoji::EmojiRangeSet& emoji_set) {
  FilterResult result;
  for (const auto& r : records) {
    if (emoji::first_emoji(r.raw_text, emoji_set)) {
      result.kept.push_back(r);
    }
  }
  result.excluded = records.size() - result.kept.size();
  return result;
}

SplitResult split(std::span<const TweetRecord> records, const SplitSpec& spec) {
  const std::size_t n = records.size();
  if (spec.train_size > n) {
    throw BoundsError("train_size " + std::to_string(spec.train_size) +
                      " exceeds corpus size " + std::to_string(n));
  }
  Rng rng(spec.seed);
  std::vector<char> in_train(n, 0);

  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span(order));
    for (std::size_t i = 0; i < spec.train_size; ++i) in_train[order[i]] = 1;
  } else {
    int max_label = -1;
    for (const auto& r : records) {
      if (!r.label) {
        throw PreconditionError("stratified split needs every record labeled (id " +
                                r.id + ")");
      }
      max_label = std::max(max_label, *r.label);
    }
    std::vector<std::vector<std::size_t>> groups(max_label + 1);
    for (std::size_t i = 0; i < n; ++i) groups[*records[i].label].push_back(i);

    // Largest-remainder quotas; ties go to the lower class index.
    std::vector<std::size_t> quota(groups.size());
    std::vector<std::pair<std::size_t, std::size_t>> remainders;  // (rem, class)
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < groups.size(); ++c) {
      const std::size_t num = spec.train_size * groups[c].size();
      quota[c] = n ? num / n : 0;
      assigned += quota[c];
      remainders.emplace_back(n ? num % n : 0, c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < spec.train_size; ++k) {
      ++quota[remainders[k].second];
      ++assigned;
    }
    for (std::size_t c = 0; c < groups.size(); ++c) {
      rng.shuffle(std::span(groups[c]));
      for (std::size_t i = 0; i < quota[c]; ++i) in_train[groups[c][i]] = 1;
    }
  }

  SplitResult result;
  result.train.reserve(spec.train_size);
  result.test.reserve(n - spec.train_size);
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? result.train : result.test).push_back(records[i]);
  }
  return result;
}

void write_csv(std::ostream& out, std::span<const TweetRecord> records) {
  const std::vector<std::string> header = {"id", "text", "emoji", "label"};
  csv::write_row(out, header);
  std::vector<std::string> fields(4);
  for (const auto& r : records) {
    fields[0] = r.id;
    fields[1] = r.clean_text ? *r.clean_text : r.raw_text;
    fields[2] = r.emoji ? utf8::encode(std::u32string(1, *r.emoji)) : "";
    fields[3] = r.label ? std::to_string(*r.label) : "";
    csv::write_row(out, fields);
  }
}

void write_csv(const std::filesystem::path& path,
               std::span<const TweetRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(out, records);
  if (!out) throw IoError("write failed for " + path.string());
}

// ---------------------------------------------------------------------------

namespace {

// Two disjoint halves of the Arabic alphabet. Category tokens start with a
// letter from the first half and then alternate halves, so no token contains
// a doubled letter (elongation collapse leaves them intact) and tokens of
// different categories never coincide. Noise tokens start from the second
// half.
constexpr char32_t kHalfA[14] = {0x0627, 0x0628, 0x062A, 0x062B, 0x062C,
                                 0x062D, 0x062E, 0x062F, 0x0630, 0x0631,
                                 0x0632, 0x0633, 0x0634, 0x0635};
constexpr char32_t kHalfB[14] = {0x0636, 0x0637, 0x0638, 0x0639, 0x063A,
                                 0x0641, 0x0642, 0x0643, 0x0644, 0x0645,
                                 0x0646, 0x0647, 0x0648, 0x064A};

std::string make_token(const char32_t* lead, std::size_t lead_digit,
                       std::size_t j, std::size_t width) {
  std::u32string t(1, lead[lead_digit]);
  std::vector<std::size_t> digits(width);
  for (std::size_t k = width; k-- > 0;) {
    digits[k] = j % 14;
    j /= 14;
  }
  const char32_t* halves[2] = {lead == kHalfA ? kHalfB : kHalfA, lead};
  for (std::size_t k = 0; k < width; ++k) t.push_back(halves[k % 2][digits[k]]);
  return utf8::encode(t);
}

std::size_t digits_for(std::size_t n) {
  std::size_t w = 1;
  for (std::size_t cap = 14; cap < n; cap *= 14) ++w;
  return w;
}

}  // namespace

void SynthSpec::validate() const {
  if (lexicons.empty()) throw ConfigError("synth spec has no categories");
  if (counts.size() != lexicons.size()) {
    throw ConfigError("synth spec: counts and lexicons differ in length");
  }
  if (!emoji.empty() && emoji.size() != lexicons.size()) {
    throw ConfigError("synth spec: emoji and lexicons differ in length");
  }
  for (std::size_t c = 0; c < lexicons.size(); ++c) {
    if (lexicons[c].empty()) {
      throw ConfigError("synth spec: empty lexicon for category " +
                        std::to_string(c));
    }
    if (!emoji.empty() && emoji[c].empty()) {
      throw ConfigError("synth spec: no emoji for category " + std::to_string(c));
    }
  }
  if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) {
    throw ConfigError("synth spec: noise_rate must lie in [0, 1]");
  }
  if (noise_rate > 0.0 && noise_lexicon.empty()) {
    throw ConfigError("synth spec: noise_rate > 0 needs a noise lexicon");
  }
  if (min_tokens == 0 || min_tokens > max_tokens) {
    throw ConfigError("synth spec: need 1 <= min_tokens <= max_tokens");
  }
}

SynthSpec separable_preset(std::size_t per_class, std::size_t lexicon_size) {
  if (lexicon_size == 0) throw ConfigError("lexicon_size must be positive");
  const auto& map = emoji::LabelMap::builtin();
  SynthSpec spec;
  const std::size_t width = digits_for(lexicon_size);
  spec.lexicons.resize(map.size());
  spec.emoji.resize(map.size());
  for (std::size_t c = 0; c < map.size(); ++c) {
    for (std::size_t j = 0; j < lexicon_size; ++j) {
      spec.lexicons[c].push_back(make_token(kHalfA, c, j, width));
    }
  }
  for (const auto& e : emoji::table_entries()) {
    auto& row = spec.emoji[map.encode(e.category)];
    if (std::find(row.begin(), row.end(), e.emoji) == row.end()) {
      row.emplace_back(e.emoji);
    }
  }
  spec.counts.assign(map.size(), per_class);
  return spec;
}

SynthSpec noisy_preset(std::size_t per_class, double noise_rate,
                       std::size_t lexicon_size) {
  SynthSpec spec = separable_preset(per_class, lexicon_size);
  spec.noise_rate = noise_rate;
  const std::size_t noise_size = lexicon_size * 2;
  const std::size_t width = digits_for(noise_size);
  for (std::size_t j = 0; j < noise_size; ++j) {
    spec.noise_lexicon.push_back(make_token(kHalfB, j % 14, j / 14, width));
  }
  return spec;
}

std::vector<TweetRecord> synth_corpus(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  std::vector<int> labels;
  for (std::size_t c = 0; c < spec.counts.size(); ++c) {
    labels.insert(labels.end(), spec.counts[c], static_cast<int>(c));
  }
  rng.shuffle(std::span(labels));

  const std::size_t id_width = std::to_string(labels.size()).size();
  std::vector<TweetRecord> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    const auto& lexicon = spec.lexicons[c];
    const std::size_t len =
        spec.min_tokens + rng.below(spec.max_tokens - spec.min_tokens + 1);
    std::string text;
    for (std::size_t k = 0; k < len; ++k) {
      const bool noisy = spec.noise_rate > 0.0 && rng.unit() < spec.noise_rate;
      const auto& source = noisy ? spec.noise_lexicon : lexicon;
      if (!text.empty()) text.push_back(' ');
      text += source[rng.below(source.size())];
    }
    TweetRecord rec;
    std::string id = std::to_string(i + 1);
    rec.id = "s" + std::string(id_width - id.size(), '0') + id;
    if (!spec.emoji.empty()) {
      const auto& row = spec.emoji[c];
      const auto& e = row[rng.below(row.size())];
      text += ' ';
      text += e;
      rec.emoji = utf8::decode(e).front();
    }
    rec.raw_text = std::move(text);
    rec.label = c;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace emojipred::corpus
