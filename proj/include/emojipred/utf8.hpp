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

#ifndef EMOJIPRED_UTF8_HPP_
#define EMOJIPRED_UTF8_HPP_

#include <string>
#include <string_view>

namespace emojipred::utf8 {

// Decodes UTF-8 into Unicode scalars. Each byte of an ill-formed sequence
// decodes to U+FFFD, so the scalar count never exceeds the byte count.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view scalars);
void append(std::string& out, char32_t scalar);

// Unicode White_Space property.
bool is_space(char32_t c);

}  // namespace emojipred::utf8

#endif  // EMOJIPRED_UTF8_HPP_
