// include/mtkit/subprocess.h

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

#ifndef MTKIT_SUBPROCESS_H_
#define MTKIT_SUBPROCESS_H_

#include <string>

namespace mtkit {
namespace subprocess {

struct CommandResult {
  int exit_status = 0;
  std::string output_tail;  // last few KB of combined stdout+stderr
};

// Runs a command through /bin/sh -c in its own process group, capturing
// combined output. timeout_seconds <= 0 means no timeout; on timeout the
// whole process group is killed and ExternalCommandError is thrown.
CommandResult RunCommand(const std::string& command, double timeout_seconds);

// RAII temporary directory under the system temp path.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string File(const std::string& name) const;

 private:
  std::string path_;
};

}  // namespace subprocess
}  // namespace mtkit

#endif  // MTKIT_SUBPROCESS_H_
