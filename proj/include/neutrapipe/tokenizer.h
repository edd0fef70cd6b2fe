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

#ifndef NEUTRAPIPE_TOKENIZER_H_
#define NEUTRAPIPE_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace neutrapipe {

// A word (maximal run of letters and digits) or a single punctuation
// character. Whitespace is dropped. Offsets are scalar-value offsets.
struct Token {
  std::u32string text;
  size_t start = 0;
  size_t end = 0;
  bool word = false;
};

std::vector<Token> Tokenize(std::u32string_view text);

// Index of the first token starting at or after `offset`, or tokens.size().
size_t TokenAt(const std::vector<Token> &tokens, size_t offset);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_TOKENIZER_H_
