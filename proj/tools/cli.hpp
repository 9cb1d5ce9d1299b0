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

#ifndef EMOJIPRED_TOOLS_CLI_HPP_
#define EMOJIPRED_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace emojipred::cli {

// Runs the `emojipred` command line. `args` excludes the program name.
// Returns the process exit code: 0 on success, 1 on a pipeline error, and
// CLI11's code for usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emojipred::cli

#endif  // EMOJIPRED_TOOLS_CLI_HPP_
