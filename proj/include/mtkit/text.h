// include/mtkit/text.h

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

#ifndef MTKIT_TEXT_H_
#define MTKIT_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtkit {
namespace text {

// Strict UTF-8 decoding. Rejects overlong encodings, surrogates and
// code points above U+10FFFF. On bad input throws DecodeError carrying
// the byte offset of the offending lead byte.
std::vector<char32_t> DecodeUtf8(std::string_view s);

// Validates without materializing code points.
void ValidateUtf8(std::string_view s);

void AppendUtf8(std::string* out, char32_t cp);

bool IsAscii(std::string_view s);

// Unicode White_Space property (fixed code-point list, stable across
// Unicode versions for the BMP whitespace set used here).
bool IsUnicodeWhitespace(char32_t cp);

// Canonical composition (NFC) via ICU. Input must be valid UTF-8.
// Pure-ASCII input is returned unchanged without entering ICU.
std::string NormalizeNfc(std::string_view s);

// Root-locale lowercasing via ICU; ASCII fast path. Input must be valid
// UTF-8.
std::string Lowercase(std::string_view s);

// Splits on Unicode whitespace; never produces empty tokens. Input must
// be valid UTF-8.
std::vector<std::string> SplitWhitespace(std::string_view s);

}  // namespace text
}  // namespace mtkit

#endif  // MTKIT_TEXT_H_
