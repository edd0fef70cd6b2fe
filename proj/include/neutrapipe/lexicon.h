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

#ifndef NEUTRAPIPE_LEXICON_H_
#define NEUTRAPIPE_LEXICON_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace neutrapipe {

struct LexiconEntry {
  std::string term;
  bool case_sensitive = false;
  bool multiword = false;

  bool operator==(const LexiconEntry &) const = default;
  auto operator<=>(const LexiconEntry &) const = default;
};

// A whole-word hit. Offsets are scalar-value offsets into the matched text.
struct TermMatch {
  std::string term;
  size_t start = 0;
  size_t end = 0;
  std::string surface;

  bool operator==(const TermMatch &) const = default;
};

// Immutable term set with whole-word, per-entry case-sensitive matching.
// Case-insensitive entries are stored lowercase; internal whitespace in
// multiword entries is collapsed to single spaces.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::string name, const std::vector<LexiconEntry> &entries);

  const std::string &name() const { return name_; }
  const std::vector<LexiconEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Returns a copy with one more entry.
  Lexicon With(const LexiconEntry &entry) const;

  // All whole-word occurrences, ordered by start offset (longer match first
  // on ties, then by term). Matches from one entry never overlap.
  std::vector<TermMatch> Match(std::string_view text) const;
  std::vector<TermMatch> Match(std::u32string_view text) const;

 private:
  struct Compiled {
    std::u32string term;
    bool case_sensitive;
  };

  std::string name_;
  std::vector<LexiconEntry> entries_;
  std::vector<Compiled> compiled_;
};

// Parses the lexicon file format: one term per line, "<term>\tcs" marks a
// case-sensitive entry, '#' starts a comment line. Throws ConfigError on a
// malformed line or when no entries remain.
Lexicon LoadLexicon(std::istream &in, const std::string &name);
Lexicon LoadLexiconFile(const std::string &path, const std::string &name);

// he, him, his, she, her, hers, himself, herself.
Lexicon DefaultPronounLexicon();

inline std::vector<TermMatch> MatchTerms(std::string_view text,
                                         const Lexicon &lexicon) {
  return lexicon.Match(text);
}

// True iff the antecedent contains at least one lexicon term.
bool ContainsOccupationalTerm(std::string_view antecedent_text,
                              const Lexicon &lexicon);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_LEXICON_H_
