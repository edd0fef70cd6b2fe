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

#ifndef NEUTRAPIPE_UNICODE_H_
#define NEUTRAPIPE_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace neutrapipe {

// All offsets in the pipeline are counted in Unicode scalar values. Text is
// carried as UTF-8 at API boundaries and decoded to UTF-32 for indexing.

// Decodes UTF-8. Throws IntegrityError on malformed input.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);

// Number of scalar values in a UTF-8 string.
size_t CodePointLength(std::string_view text);

// True for general category L* (Lu, Ll, Lt, Lm, Lo).
bool IsLetter(char32_t c);

bool IsDigit(char32_t c);

bool IsSpace(char32_t c);

bool IsUpper(char32_t c);

// Simple (length-preserving) case mappings.
char32_t ToLower(char32_t c);
char32_t ToUpper(char32_t c);

std::u32string Lowercase(std::u32string_view text);
std::string Lowercase(std::string_view utf8);

// Trims Unicode whitespace from both ends.
std::u32string Trim(std::u32string_view text);
std::string Trim(std::string_view utf8);

// True if the scalar at `pos` (if any) and the one before `pos` (if any) are
// not letters, i.e. `pos` can bound a whole-word match on that side.
bool IsWordBoundaryBefore(std::u32string_view text, size_t pos);
bool IsWordBoundaryAfter(std::u32string_view text, size_t pos);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_UNICODE_H_
