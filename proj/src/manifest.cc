// src/manifest.cc

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

#include "mtkit/manifest.h"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "mtkit/error.h"
#include "mtkit/version.h"

namespace mtkit {
namespace pipeline {

namespace {

std::string UtcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for digesting");

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("EVP_MD_CTX_new failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);

  char buffer[65536];
  while (in) {
    in.read(buffer, sizeof buffer);
    std::streamsize n = in.gcount();
    if (n > 0) EVP_DigestUpdate(ctx, buffer, std::size_t(n));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);

  std::string hex;
  hex.reserve(std::size_t(len) * 2);
  for (unsigned int i = 0; i < len; ++i) {
    char byte[3];
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

Manifest::Manifest(const std::string& subcommand) {
  root_["tool"] = "mtkit";
  root_["version"] = kVersion;
  root_["subcommand"] = subcommand;
  root_["timestamp_utc"] = UtcTimestamp();
  root_["config"] = nlohmann::ordered_json::object();
  root_["inputs"] = nlohmann::ordered_json::array();
  root_["outputs"] = nlohmann::ordered_json::array();
  root_["counts"] = nlohmann::ordered_json::object();
}

void Manifest::AddConfig(const std::string& key,
                         const nlohmann::ordered_json& value) {
  root_["config"][key] = value;
}

void Manifest::AddInput(const std::string& label, const std::string& path,
                        std::uint64_t line_count) {
  nlohmann::ordered_json entry;
  entry["label"] = label;
  entry["path"] = path;
  entry["lines"] = line_count;
  if (path != "-") entry["sha256"] = Sha256File(path);
  root_["inputs"].push_back(std::move(entry));
}

void Manifest::AddOutput(const std::string& label, const std::string& path,
                         std::uint64_t line_count) {
  nlohmann::ordered_json entry;
  entry["label"] = label;
  entry["path"] = path;
  entry["lines"] = line_count;
  if (path != "-") entry["sha256"] = Sha256File(path);
  root_["outputs"].push_back(std::move(entry));
}

void Manifest::AddCount(const std::string& key, std::uint64_t value) {
  root_["counts"][key] = value;
}

void Manifest::Write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << root_.dump(2) << '\n';
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace pipeline
}  // namespace mtkit
