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

#ifndef NEUTRAPIPE_NEUTRALIZER_H_
#define NEUTRAPIPE_NEUTRALIZER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "neutrapipe/corpus.h"
#include "neutrapipe/tokenizer.h"

namespace neutrapipe {

enum class PronounRole {
  kSubject,
  kObject,
  kPossessiveDeterminer,
  kPossessivePronoun,
  kReflexive,
};

std::string_view RoleName(PronounRole role);
PronounRole ParseRole(std::string_view name);

// A verb rewritten to agree with a plural subject.
struct VerbFix {
  size_t start = 0;
  size_t end = 0;
  std::string before;
  std::string after;

  bool operator==(const VerbFix &) const = default;
};

// One neutralization edit. Offsets refer to the original text.
struct EditRecord {
  std::string pmid;
  size_t start = 0;
  size_t end = 0;
  std::string before;
  std::string after;
  PronounRole role = PronounRole::kSubject;
  std::string antecedent_text;
  std::optional<VerbFix> verb_fix;

  bool operator==(const EditRecord &) const = default;
};

void to_json(nlohmann::ordered_json &j, const EditRecord &e);
void from_json(const nlohmann::ordered_json &j, EditRecord &e);

// Merges adjacent pairs such as "he or she" and "his or her" (single spaces,
// any casing) into one compound instance. Other instances pass through.
std::vector<PronounInstance> DetectCompounds(
    std::string_view text, const std::vector<PronounInstance> &instances);

// Rule-based grammatical role of a pronoun in context.
PronounRole AssignRole(std::string_view text, const PronounInstance &instance);
PronounRole AssignRole(std::u32string_view text,
                       const std::vector<Token> &tokens,
                       const PronounInstance &instance);

// They-series form for a role. Total over lemmas and compounds; the lemma
// does not change the result and is accepted for symmetry with callers.
std::string MapPronoun(std::string_view lemma, PronounRole role);

// Adjusts the verb following a replaced subject pronoun (token index
// `subject_index` is the last token of the subject). Skips up to two
// adverbs. Returns nullopt when nothing changes.
std::optional<VerbFix> FixVerbAgreement(const std::vector<Token> &tokens,
                                        size_t subject_index);

struct NeutralizeOptions {
  // Rewrite the verb after replaced subject pronouns.
  bool verb_agreement = true;
  // Leave pronouns alone when the antecedent says female/male/woman/man.
  bool gender_guard = false;
};

struct NeutralizeResult {
  std::string text;
  std::vector<EditRecord> edits;
};

// Rewrites only Occupation-labelled instances. Throws IntegrityError when an
// instance does not match the text or two instances overlap.
NeutralizeResult NeutralizeAbstract(
    const Abstract &abstract, const std::vector<ClassifiedInstance> &instances,
    const NeutralizeOptions &options = {});

// Undoes `edits` (as produced for `new_text`) and returns the original text.
std::string RevertEdits(std::string_view new_text,
                        const std::vector<EditRecord> &edits);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_NEUTRALIZER_H_
