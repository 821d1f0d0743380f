// src/text.cc

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

#include "mtkit/text.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <cctype>

#include "mtkit/error.h"

namespace mtkit {
namespace text {

namespace {

// Decodes one code point starting at byte offset i. Returns the code point
// and advances i past it. Throws DecodeError on malformed input.
char32_t NextCodePoint(std::string_view s, std::size_t* i) {
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  std::size_t n = s.size();
  std::size_t at = *i;
  unsigned char b0 = p[at];

  auto fail = [&]() -> char32_t {
    throw DecodeError("invalid UTF-8 byte sequence at byte offset " +
                          std::to_string(at),
                      at);
  };
  auto cont = [&](std::size_t k) -> unsigned char {
    if (at + k >= n) fail();
    unsigned char b = p[at + k];
    if ((b & 0xC0) != 0x80) fail();
    return b;
  };

  if (b0 < 0x80) {
    *i = at + 1;
    return b0;
  }
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    unsigned char b1 = cont(1);
    *i = at + 2;
    return (char32_t(b0 & 0x1F) << 6) | (b1 & 0x3F);
  }
  if (b0 >= 0xE0 && b0 <= 0xEF) {
    unsigned char b1 = cont(1);
    // Reject overlongs (E0 A0..) and surrogates (ED 80..9F only).
    if (b0 == 0xE0 && b1 < 0xA0) fail();
    if (b0 == 0xED && b1 > 0x9F) fail();
    unsigned char b2 = cont(2);
    *i = at + 3;
    return (char32_t(b0 & 0x0F) << 12) | (char32_t(b1 & 0x3F) << 6) |
           (b2 & 0x3F);
  }
  if (b0 >= 0xF0 && b0 <= 0xF4) {
    unsigned char b1 = cont(1);
    if (b0 == 0xF0 && b1 < 0x90) fail();
    if (b0 == 0xF4 && b1 > 0x8F) fail();
    unsigned char b2 = cont(2);
    unsigned char b3 = cont(3);
    *i = at + 4;
    return (char32_t(b0 & 0x07) << 18) | (char32_t(b1 & 0x3F) << 12) |
           (char32_t(b2 & 0x3F) << 6) | (b3 & 0x3F);
  }
  return fail();
}

const icu::Normalizer2* NfcInstance() {
  static const icu::Normalizer2* nfc = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr)
      throw Error("ICU NFC normalizer unavailable");
    return n;
  }();
  return nfc;
}

}  // namespace

std::vector<char32_t> DecodeUtf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) out.push_back(NextCodePoint(s, &i));
  return out;
}

void ValidateUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) NextCodePoint(s, &i);
}

void AppendUtf8(std::string* out, char32_t cp) {
  if (cp < 0x80) {
    out->push_back(char(cp));
  } else if (cp < 0x800) {
    out->push_back(char(0xC0 | (cp >> 6)));
    out->push_back(char(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(char(0xE0 | (cp >> 12)));
    out->push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(char(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(char(0xF0 | (cp >> 18)));
    out->push_back(char(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(char(0x80 | (cp & 0x3F)));
  }
}

bool IsAscii(std::string_view s) {
  for (unsigned char c : s)
    if (c >= 0x80) return false;
  return true;
}

bool IsUnicodeWhitespace(char32_t cp) {
  switch (cp) {
    case 0x0009:
    case 0x000A:
    case 0x000B:
    case 0x000C:
    case 0x000D:
    case 0x0020:
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::string NormalizeNfc(std::string_view s) {
  if (IsAscii(s)) return std::string(s);
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString u =
      icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), s.size()));
  icu::UnicodeString composed = NfcInstance()->normalize(u, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  composed.toUTF8String(out);
  return out;
}

std::string Lowercase(std::string_view s) {
  if (IsAscii(s)) {
    std::string out(s);
    for (char& c : out)
      c = char(std::tolower(static_cast<unsigned char>(c)));
    return out;
  }
  icu::UnicodeString u =
      icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), s.size()));
  u.toLower(icu::Locale::getRoot());
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> tokens;
  if (IsAscii(s)) {
    std::size_t i = 0, n = s.size();
    while (i < n) {
      while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      std::size_t start = i;
      while (i < n && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i > start) tokens.emplace_back(s.substr(start, i - start));
    }
    return tokens;
  }
  std::string current;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t start = i;
    char32_t cp = NextCodePoint(s, &i);
    if (IsUnicodeWhitespace(cp)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.append(s.substr(start, i - start));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace text
}  // namespace mtkit
