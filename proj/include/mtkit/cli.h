// include/mtkit/cli.h

// Copyright 2026  mtkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MTKIT_CLI_H_
#define MTKIT_CLI_H_

namespace mtkit {
namespace cli {

// Parses argv and executes one subcommand. Machine-readable key=value
// results go to stdout, human-oriented tables and warnings to stderr.
//
// Exit codes: 0 success, 2 usage error, 3 data/contract error,
// 4 external-command failure.
int Run(int argc, const char* const* argv);

}  // namespace cli
}  // namespace mtkit

#endif  // MTKIT_CLI_H_
