// Copyright 2026 The Neutrapipe Authors.
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

#include "neutrapipe/unicode.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "neutrapipe/errors.h"

namespace neutrapipe {

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto *bytes = reinterpret_cast<const uint8_t *>(text.data());
  int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw IntegrityError("malformed UTF-8 at byte " + std::to_string(at));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) throw IntegrityError("unencodable code point");
    out.append(reinterpret_cast<const char *>(buf), n);
  }
  return out;
}

size_t CodePointLength(std::string_view text) {
  size_t n = 0;
  for (unsigned char b : text) {
    if ((b & 0xC0) != 0x80) ++n;
  }
  return n;
}

bool IsLetter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

bool IsDigit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

bool IsSpace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool IsUpper(char32_t c) { return u_isupper(static_cast<UChar32>(c)); }

char32_t ToLower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

char32_t ToUpper(char32_t c) {
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(c)));
}

std::u32string Lowercase(std::u32string_view text) {
  std::u32string out(text);
  for (char32_t &c : out) c = ToLower(c);
  return out;
}

std::string Lowercase(std::string_view utf8) {
  return EncodeUtf8(Lowercase(DecodeUtf8(utf8)));
}

std::u32string Trim(std::u32string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && IsSpace(text[begin])) ++begin;
  while (end > begin && IsSpace(text[end - 1])) --end;
  return std::u32string(text.substr(begin, end - begin));
}

std::string Trim(std::string_view utf8) {
  return EncodeUtf8(Trim(DecodeUtf8(utf8)));
}

bool IsWordBoundaryBefore(std::u32string_view text, size_t pos) {
  return pos == 0 || !IsLetter(text[pos - 1]);
}

bool IsWordBoundaryAfter(std::u32string_view text, size_t pos) {
  return pos >= text.size() || !IsLetter(text[pos]);
}

}  // namespace neutrapipe
