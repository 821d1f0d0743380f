// src/subprocess.cc

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

#include "mtkit/subprocess.h"

#include <poll.h>
#include <signal.h>
#include <stdlib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <vector>

#include "mtkit/error.h"

namespace mtkit {
namespace subprocess {

namespace {

constexpr std::size_t kOutputTailBytes = 4096;

void KeepTail(std::string* tail, const char* data, std::size_t len) {
  tail->append(data, len);
  if (tail->size() > kOutputTailBytes)
    tail->erase(0, tail->size() - kOutputTailBytes);
}

}  // namespace

CommandResult RunCommand(const std::string& command, double timeout_seconds) {
  int pipe_fds[2];
  if (pipe(pipe_fds) != 0)
    throw ExternalCommandError("pipe() failed: " +
                               std::string(std::strerror(errno)));

  pid_t pid = fork();
  if (pid < 0) {
    close(pipe_fds[0]);
    close(pipe_fds[1]);
    throw ExternalCommandError("fork() failed: " +
                               std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so a timeout can kill descendants
    close(pipe_fds[0]);
    dup2(pipe_fds[1], STDOUT_FILENO);
    dup2(pipe_fds[1], STDERR_FILENO);
    close(pipe_fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }
  setpgid(pid, pid);
  close(pipe_fds[1]);

  CommandResult result;
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(
              timeout_seconds > 0 ? timeout_seconds : 0));
  bool timed_out = false;
  char buffer[4096];
  for (;;) {
    int wait_ms = -1;
    if (timeout_seconds > 0) {
      auto remaining = deadline - std::chrono::steady_clock::now();
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    remaining)
                    .count();
      if (ms <= 0) {
        timed_out = true;
        break;
      }
      wait_ms = int(std::min<long long>(ms, 1000));
    }
    struct pollfd pfd{pipe_fds[0], POLLIN, 0};
    int rc = poll(&pfd, 1, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) continue;  // poll slice elapsed, re-check deadline
    ssize_t n = read(pipe_fds[0], buffer, sizeof buffer);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;  // writers gone
    KeepTail(&result.output_tail, buffer, std::size_t(n));
  }
  close(pipe_fds[0]);

  if (timed_out) {
    kill(-pid, SIGKILL);
    int status = 0;
    waitpid(pid, &status, 0);
    throw ExternalCommandError("command timed out after " +
                               std::to_string(timeout_seconds) +
                               "s: " + command);
  }
  int status = 0;
  if (waitpid(pid, &status, 0) < 0)
    throw ExternalCommandError("waitpid() failed: " +
                               std::string(std::strerror(errno)));
  if (WIFEXITED(status))
    result.exit_status = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_status = 128 + WTERMSIG(status);
  else
    result.exit_status = -1;
  return result;
}

TempDir::TempDir() {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / "mtkit-XXXXXX").string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (mkdtemp(buf.data()) == nullptr)
    throw IoError("mkdtemp() failed: " + std::string(std::strerror(errno)));
  path_.assign(buf.data());
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::File(const std::string& name) const {
  return (std::filesystem::path(path_) / name).string();
}

}  // namespace subprocess
}  // namespace mtkit
