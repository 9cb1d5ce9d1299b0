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

#ifndef EMOJIPRED_RECORD_HPP_
#define EMOJIPRED_RECORD_HPP_

#include <optional>
#include <string>

namespace emojipred {

// One tweet as it moves through the pipeline. `label`, when present, is the
// category index of `emoji` under the active label map.
struct TweetRecord {
  std::string id;
  std::string raw_text;
  std::optional<std::string> clean_text;
  std::optional<char32_t> emoji;
  std::optional<int> label;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

}  // namespace emojipred

#endif  // EMOJIPRED_RECORD_HPP_
