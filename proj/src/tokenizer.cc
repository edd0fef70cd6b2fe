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

#include "neutrapipe/tokenizer.h"

#include <algorithm>

#include "neutrapipe/unicode.h"

namespace neutrapipe {

namespace {

bool IsWordChar(char32_t c) { return IsLetter(c) || IsDigit(c); }

}  // namespace

std::vector<Token> Tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    if (IsSpace(text[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    bool word = IsWordChar(text[i]);
    if (word) {
      while (i < text.size() && IsWordChar(text[i])) ++i;
    } else {
      ++i;
    }
    tokens.push_back(
        Token{std::u32string(text.substr(start, i - start)), start, i, word});
  }
  return tokens;
}

size_t TokenAt(const std::vector<Token> &tokens, size_t offset) {
  auto it = std::lower_bound(
      tokens.begin(), tokens.end(), offset,
      [](const Token &token, size_t value) { return token.start < value; });
  return static_cast<size_t>(it - tokens.begin());
}

}  // namespace neutrapipe
