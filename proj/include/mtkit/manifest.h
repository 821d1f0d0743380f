// include/mtkit/manifest.h

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

#ifndef MTKIT_MANIFEST_H_
#define MTKIT_MANIFEST_H_

#include <cstdint>
#include <string>

#include <json.hpp>

namespace mtkit {
namespace pipeline {

// SHA-256 of a file's bytes as lowercase hex.
std::string Sha256File(const std::string& path);

// Reproducibility record for one run: configuration, input digests, output
// counts, tool version. Two runs over identical inputs produce identical
// manifests except for the timestamp_utc field.
class Manifest {
 public:
  explicit Manifest(const std::string& subcommand);

  void AddConfig(const std::string& key, const nlohmann::ordered_json& value);
  // Records path, line count and (for real files) content digest. Pass
  // line_count only when known; stdin ("-") gets no digest.
  void AddInput(const std::string& label, const std::string& path,
                std::uint64_t line_count);
  void AddOutput(const std::string& label, const std::string& path,
                 std::uint64_t line_count);
  void AddCount(const std::string& key, std::uint64_t value);

  nlohmann::ordered_json ToJson() const { return root_; }
  void Write(const std::string& path) const;

 private:
  nlohmann::ordered_json root_;
};

}  // namespace pipeline
}  // namespace mtkit

#endif  // MTKIT_MANIFEST_H_
