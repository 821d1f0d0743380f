// include/mtkit/error.h

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

#ifndef MTKIT_ERROR_H_
#define MTKIT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtkit {

// Base class for all toolkit errors. The CLI maps subclasses onto its
// exit-code taxonomy: UsageError -> 2, ExternalCommandError -> 4, and
// every other Error (data, format, alignment, contract) -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File or stream I/O failure. Message carries the path.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// Invalid UTF-8 input. byte_offset() is the offset of the offending byte
// within the line that failed to decode.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& msg, std::size_t byte_offset)
      : Error(msg), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Parallel files with unequal line counts, or eval corpora of unequal
// segment counts.
class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string& msg) : Error(msg) {}
};

// Malformed data: bad model file, dangling subword marker, bad lexicon line.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

// An external translator broke its contract (wrong output line count).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

// An external command failed: nonzero exit status or timeout.
class ExternalCommandError : public Error {
 public:
  explicit ExternalCommandError(const std::string& msg) : Error(msg) {}
};

// Bad command-line usage or invalid configuration values.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

}  // namespace mtkit

#endif  // MTKIT_ERROR_H_
