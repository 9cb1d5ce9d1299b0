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

#ifndef EMOJIPRED_CORPUS_HPP_
#define EMOJIPRED_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "emojipred/emoji.hpp"
#include "emojipred/record.hpp"

namespace emojipred::corpus {

struct CorpusStats {
  std::size_t total_ingested = 0;  // data rows, empty ones included
  std::size_t dropped_empty = 0;
  std::size_t malformed = 0;  // skipped, not part of total_ingested
  std::size_t with_emoji = 0;
  std::size_t without_emoji = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

struct IngestResult {
  std::vector<TweetRecord> records;
  CorpusStats stats;
};

// Reads a UTF-8 CSV with a mandatory `text` column. `id` is taken from an
// `id` column when present, otherwise the 1-based data row number. When the
// file carries `emoji`/`label` columns (a labeled corpus) they are loaded
// too. Throws IoError for unreadable files and SchemaError when the `text`
// column is missing.
IngestResult ingest_csv(const std::filesystem::path& path,
                        const emoji::EmojiRangeSet& emoji_set =
                            emoji::LabelMap::builtin().extraction_set());
IngestResult ingest_csv(std::istream& in,
                        const emoji::EmojiRangeSet& emoji_set =
                            emoji::LabelMap::builtin().extraction_set());

struct FilterResult {
  std::vector<TweetRecord> kept;
  std::size_t excluded = 0;
};

FilterResult filter_emoji_bearing(
    std::span<const TweetRecord> records,
    const emoji::EmojiRangeSet& emoji_set =
        emoji::LabelMap::builtin().extraction_set());

struct SplitSpec {
  std::size_t train_size = 0;
  std::uint64_t seed = 42;
  bool stratified = false;
};

struct SplitResult {
  std::vector<TweetRecord> train;
  std::vector<TweetRecord> test;
};

// Seeded partition into train/test. Both halves keep input order. With
// `stratified`, each class contributes a largest-remainder share of
// train_size, so per-class train counts are within one record of
// proportional.
SplitResult split(std::span<const TweetRecord> records, const SplitSpec& spec);

// Writes `id,text,emoji,label` (text is the clean text when present).
void write_csv(std::ostream& out, std::span<const TweetRecord> records);
void write_csv(const std::filesystem::path& path,
               std::span<const TweetRecord> records);

// ---------------------------------------------------------------------------
// Synthetic corpora

struct SynthSpec {
  // One token lexicon per category, in label order.
  std::vector<std::vector<std::string>> lexicons;
  // Records per category.
  std::vector<std::size_t> counts;
  // Probability that each token is replaced by a draw from `noise_lexicon`.
  double noise_rate = 0.0;
  std::vector<std::string> noise_lexicon;
  std::size_t min_tokens = 4;
  std::size_t max_tokens = 8;
  // Emoji written into each record's raw text, per category.
  std::vector<std::vector<std::string>> emoji;

  void validate() const;
};

// 14 pairwise-disjoint Arabic-script lexicons, `per_class` records each and
// the category table emoji rows.
SynthSpec separable_preset(std::size_t per_class, std::size_t lexicon_size = 20);
// The separable preset with a shared noise lexicon mixed in at `noise_rate`.
SynthSpec noisy_preset(std::size_t per_class, double noise_rate,
                       std::size_t lexicon_size = 20);

// Deterministic in (spec, seed). Records are interleaved in a seeded order;
// labels are the generating category.
std::vector<TweetRecord> synth_corpus(const SynthSpec& spec,
                                      std::uint64_t seed);

}  // namespace emojipred::corpus

#endif  // EMOJIPRED_CORPUS_HPP_
