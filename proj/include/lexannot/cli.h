// Copyright 2026 The lexannot Authors.
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

#ifndef LEXANNOT_CLI_H_
#define LEXANNOT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace lexannot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line. Results go to the files named by -o (or `out` for
// "-o -"); diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace lexannot::cli

#endif  // LEXANNOT_CLI_H_
