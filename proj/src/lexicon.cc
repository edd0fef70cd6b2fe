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

#include "neutrapipe/lexicon.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include "neutrapipe/errors.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

namespace {

// Trims and collapses internal whitespace runs to one ASCII space.
std::u32string NormalizeTerm(std::u32string_view raw) {
  std::u32string out;
  bool pending_space = false;
  for (char32_t c : raw) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

LexiconEntry Normalize(const LexiconEntry &entry) {
  std::u32string term = NormalizeTerm(DecodeUtf8(entry.term));
  if (!entry.case_sensitive) term = Lowercase(term);
  LexiconEntry out;
  out.term = EncodeUtf8(term);
  out.case_sensitive = entry.case_sensitive;
  out.multiword = term.find(U' ') != std::u32string::npos;
  return out;
}

}  // namespace

Lexicon::Lexicon(std::string name, const std::vector<LexiconEntry> &entries)
    : name_(std::move(name)) {
  std::set<std::pair<std::string, bool>> seen;
  for (const LexiconEntry &raw : entries) {
    LexiconEntry entry = Normalize(raw);
    if (entry.term.empty()) throw ConfigError("empty lexicon term");
    if (!seen.emplace(entry.term, entry.case_sensitive).second) continue;
    entries_.push_back(entry);
  }
  std::sort(entries_.begin(), entries_.end());
  for (const LexiconEntry &entry : entries_) {
    compiled_.push_back({DecodeUtf8(entry.term), entry.case_sensitive});
  }
}

Lexicon Lexicon::With(const LexiconEntry &entry) const {
  std::vector<LexiconEntry> entries = entries_;
  entries.push_back(entry);
  return Lexicon(name_, entries);
}

std::vector<TermMatch> Lexicon::Match(std::string_view text) const {
  return Match(DecodeUtf8(text));
}

std::vector<TermMatch> Lexicon::Match(std::u32string_view text) const {
  std::vector<TermMatch> matches;
  if (text.empty() || compiled_.empty()) return matches;
  const std::u32string lowered = Lowercase(text);
  for (size_t e = 0; e < compiled_.size(); ++e) {
    const Compiled &entry = compiled_[e];
    std::u32string_view haystack =
        entry.case_sensitive ? text : std::u32string_view(lowered);
    size_t pos = 0;
    while ((pos = haystack.find(entry.term, pos)) != std::u32string_view::npos) {
      size_t end = pos + entry.term.size();
      if (IsWordBoundaryBefore(text, pos) && IsWordBoundaryAfter(text, end)) {
        matches.push_back(TermMatch{entries_[e].term, pos, end,
                                    EncodeUtf8(text.substr(pos, end - pos))});
        pos = end;
      } else {
        ++pos;
      }
    }
  }
  std::sort(matches.begin(), matches.end(),
            [](const TermMatch &a, const TermMatch &b) {
              return std::make_tuple(a.start, b.end, a.term) <
                     std::make_tuple(b.start, a.end, b.term);
            });
  return matches;
}

Lexicon LoadLexicon(std::istream &in, const std::string &name) {
  std::vector<LexiconEntry> entries;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::u32string trimmed = Trim(DecodeUtf8(line));
    if (trimmed.empty() || trimmed.front() == U'#') continue;
    LexiconEntry entry;
    size_t tab = line.find('\t');
    std::string term = line.substr(0, tab);
    if (tab != std::string::npos) {
      std::string flag = Trim(std::string_view(line).substr(tab + 1));
      if (flag != "cs") {
        throw ConfigError(name + ":" + std::to_string(line_number) +
                          ": unknown entry flag '" + flag + "'");
      }
      entry.case_sensitive = true;
    }
    entry.term = Trim(term);
    if (entry.term.empty()) {
      throw ConfigError(name + ":" + std::to_string(line_number) +
                        ": empty term");
    }
    entries.push_back(entry);
  }
  if (entries.empty()) throw ConfigError("empty lexicon: " + name);
  return Lexicon(name, entries);
}

Lexicon LoadLexiconFile(const std::string &path, const std::string &name) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon file: " + path);
  return LoadLexicon(in, name);
}

Lexicon DefaultPronounLexicon() {
  std::vector<LexiconEntry> entries;
  for (const char *term :
       {"he", "him", "his", "she", "her", "hers", "himself", "herself"}) {
    entries.push_back(LexiconEntry{term, false, false});
  }
  return Lexicon("pronouns", entries);
}

bool ContainsOccupationalTerm(std::string_view antecedent_text,
                              const Lexicon &lexicon) {
  if (antecedent_text.empty()) return false;
  return !lexicon.Match(antecedent_text).empty();
}

}  // namespace neutrapipe
