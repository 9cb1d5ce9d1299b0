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

#ifndef EMOJIPRED_PROVENANCE_HPP_
#define EMOJIPRED_PROVENANCE_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace emojipred {

inline constexpr std::string_view kToolVersion = "0.1.0";

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Written into every artifact so a file can be traced to the run that made
// it. Holds no timestamps: identical runs produce identical bytes.
struct Provenance {
  std::string command;
  std::string config_hash;  // 16 hex digits
  std::uint64_t seed = 0;
  std::string tool_version = std::string(kToolVersion);

  std::string line() const;
  nlohmann::ordered_json json() const;
};

}  // namespace emojipred

#endif  // EMOJIPRED_PROVENANCE_HPP_
