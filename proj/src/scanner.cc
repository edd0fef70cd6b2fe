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

#include "neutrapipe/scanner.h"

#include <charconv>

#include "neutrapipe/errors.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

namespace {

int ParseYear(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  int year = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), year);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.size() != 4) {
    throw ConfigError("bad year '" + std::string(text) + "'");
  }
  return year;
}

}  // namespace

YearRange ParseYearRange(std::string_view text) {
  size_t dash = text.find('-');
  YearRange range;
  if (dash == std::string_view::npos) {
    range.first = range.last = ParseYear(text);
  } else {
    range.first = ParseYear(text.substr(0, dash));
    range.last = ParseYear(text.substr(dash + 1));
  }
  if (range.last < range.first) {
    throw ConfigError("empty year range '" + std::string(text) + "'");
  }
  return range;
}

std::optional<Gender> GenderOfLemma(std::string_view lemma) {
  if (lemma == "he" || lemma == "him" || lemma == "his" || lemma == "himself") {
    return Gender::kMasculine;
  }
  if (lemma == "she" || lemma == "her" || lemma == "hers" ||
      lemma == "herself") {
    return Gender::kFeminine;
  }
  if (lemma.find(" or ") != std::string_view::npos) return Gender::kCompound;
  return std::nullopt;
}

std::vector<PronounInstance> ScanAbstract(const Abstract &abstract,
                                          const Lexicon &pronouns) {
  std::vector<PronounInstance> instances;
  for (const TermMatch &match : pronouns.Match(abstract.text)) {
    PronounInstance instance;
    instance.pmid = abstract.pmid;
    instance.offset = match.start;
    instance.instance_id = MakeInstanceId(abstract.pmid, match.start);
    instance.surface = match.surface;
    instance.lemma = Lowercase(match.surface);
    // Custom pronoun lexicons may carry forms outside the closed set.
    instance.gender =
        GenderOfLemma(instance.lemma).value_or(Gender::kMasculine);
    instances.push_back(std::move(instance));
  }
  return instances;
}

bool InYearRange(const Abstract &abstract,
                 const std::optional<YearRange> &years) {
  if (!years) return true;
  std::optional<int> year = abstract.year();
  return year && years->Contains(*year);
}

std::vector<PronounInstance> ScanCorpus(const std::vector<Abstract> &abstracts,
                                        const Lexicon &pronouns,
                                        const std::optional<YearRange> &years) {
  std::vector<PronounInstance> out;
  for (const Abstract &abstract : abstracts) {
    if (!InYearRange(abstract, years)) continue;
    std::vector<PronounInstance> found = ScanAbstract(abstract, pronouns);
    out.insert(out.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  return out;
}

}  // namespace neutrapipe
