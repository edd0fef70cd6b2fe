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

#ifndef NEUTRAPIPE_PROMPTS_H_
#define NEUTRAPIPE_PROMPTS_H_

#include <optional>
#include <string>
#include <string_view>

#include "neutrapipe/corpus.h"

namespace neutrapipe {

inline constexpr std::string_view kStartMarker = "[START]";
inline constexpr std::string_view kEndMarker = "[END]";

struct PromptPair {
  std::string system_content;
  std::string user_content;

  bool operator==(const PromptPair &) const = default;
};

enum class QueryKind { kResolution, kClassification };

// Inserts [START]/[END] around the pronoun. Throws IntegrityError if the
// instance offset does not point at its surface in `abstract_text`.
std::string HighlightPronoun(std::string_view abstract_text,
                             const PronounInstance &instance);

// Pronoun resolution query. An empty background is allowed (with a warning).
PromptPair BuildResolutionPrompt(const PronounInstance &instance,
                                 const Abstract &abstract,
                                 std::string_view background_text);

// Antecedent classification query. An empty rules text is allowed (with a
// warning).
PromptPair BuildClassificationPrompt(const ResolvedInstance &resolved,
                                     const Abstract &abstract,
                                     std::string_view rules_text);

// Which query a prompt was built for, judged from its system content.
std::optional<QueryKind> DetectQueryKind(const PromptPair &prompt);

// Hex SHA-256 over system_content, U+001E, user_content. Keys the reply cache
// and replay transcripts.
std::string PromptHash(const PromptPair &prompt);

// Trims whitespace and matching surrounding quotes from a resolution reply.
std::string CleanResolutionReply(std::string_view reply);

// Lenient label parsing: lowercase, strip non-letters at the edges, accept
// the six wire names plus category aliases ("trial participant",
// "author of the abstract", "proper name", ...).
std::optional<AntecedentLabel> ParseLabelReply(std::string_view reply);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_PROMPTS_H_
