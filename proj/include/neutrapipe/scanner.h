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

#ifndef NEUTRAPIPE_SCANNER_H_
#define NEUTRAPIPE_SCANNER_H_

#include <optional>
#include <string_view>
#include <vector>

#include "neutrapipe/corpus.h"
#include "neutrapipe/lexicon.h"

namespace neutrapipe {

// Inclusive year range.
struct YearRange {
  int first = 0;
  int last = 0;

  bool Contains(int year) const { return year >= first && year <= last; }
};

// Parses "1965-1980" (or a single year). Throws ConfigError.
YearRange ParseYearRange(std::string_view text);

// Gender implied by a pronoun lemma. Compound lemmas ("he or she") map to
// kCompound. Returns nullopt for anything else.
std::optional<Gender> GenderOfLemma(std::string_view lemma);

// One instance per pronoun-lexicon match, ordered by offset.
std::vector<PronounInstance> ScanAbstract(const Abstract &abstract,
                                          const Lexicon &pronouns);

// Concatenates ScanAbstract over the abstracts in input order. With a year
// range, abstracts without a readable year are skipped.
std::vector<PronounInstance> ScanCorpus(
    const std::vector<Abstract> &abstracts, const Lexicon &pronouns,
    const std::optional<YearRange> &years = std::nullopt);

// Abstracts that ScanCorpus would visit.
bool InYearRange(const Abstract &abstract,
                 const std::optional<YearRange> &years);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_SCANNER_H_
