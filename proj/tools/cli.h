// Copyright 2026 The jamgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JAMGAME_TOOLS_CLI_H_
#define JAMGAME_TOOLS_CLI_H_

#include <iosfwd>

namespace jamgame::cli {

// Stable process exit codes.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,  // bad command line or unreadable/unwritable file
  kExitValidation = 2,
  kExitWorkBound = 3,
  kExitInternal = 4,
};

// Entry point for the jamgame command. Writes results to `out` and
// diagnostics to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace jamgame::cli

#endif  // JAMGAME_TOOLS_CLI_H_
