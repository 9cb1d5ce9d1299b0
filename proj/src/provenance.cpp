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

#include "emojipred/provenance.hpp"

#include <fmt/format.h>

namespace emojipred {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Provenance::line() const {
  return fmt::format("emojipred {} command={} config={} seed={}", tool_version,
                     command, config_hash, seed);
}

nlohmann::ordered_json Provenance::json() const {
  nlohmann::ordered_json j;
  j["tool"] = "emojipred";
  j["version"] = tool_version;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  return j;
}

}  // namespace emojipred
