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

#include "neutrapipe/neutralizer.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "neutrapipe/errors.h"
#include "neutrapipe/log.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

using nlohmann::ordered_json;

namespace {

using WordSet = std::unordered_set<std::u32string>;

// Words that cannot start the noun phrase after a possessive "his"/"her".
const WordSet &ClosedClassWords() {
  static const WordSet words = {
      // Determiners and quantifiers.
      U"a", U"an", U"the", U"this", U"that", U"these", U"those", U"some",
      U"any", U"each", U"every", U"all", U"both", U"either", U"neither",
      U"such", U"which", U"what", U"whose", U"who", U"whom",
      // Prepositions.
      U"of", U"in", U"on", U"at", U"by", U"for", U"with", U"without", U"to",
      U"from", U"into", U"onto", U"about", U"after", U"before", U"during",
      U"under", U"over", U"through", U"than", U"as", U"via", U"against",
      U"among", U"between", U"upon", U"within", U"toward", U"towards",
      U"since", U"until", U"despite", U"like", U"per",
      // Conjunctions.
      U"and", U"or", U"but", U"nor", U"so", U"yet", U"if", U"because",
      U"although", U"though", U"while", U"whereas", U"when", U"where",
      U"whether", U"unless",
      // Pronouns.
      U"he", U"she", U"it", U"they", U"we", U"i", U"you", U"him", U"her",
      U"them", U"us", U"me", U"himself", U"herself", U"themselves",
      U"itself", U"his", U"hers", U"its", U"their", U"our", U"my", U"your",
      // Auxiliaries and modals.
      U"is", U"are", U"was", U"were", U"be", U"been", U"being", U"am",
      U"has", U"have", U"had", U"does", U"do", U"did", U"will", U"would",
      U"shall", U"should", U"can", U"could", U"may", U"might", U"must",
      // Bare verbs that commonly follow an object pronoun.
      U"go", U"feel", U"become", U"leave", U"come", U"get",
      // Adverbs.
      U"not", U"also", U"often", U"always", U"never", U"still", U"now",
      U"then", U"there", U"here", U"yesterday", U"today", U"tomorrow",
      U"again", U"once", U"twice", U"too", U"very", U"just", U"well",
      U"soon", U"later", U"already", U"back", U"up", U"down", U"out",
      U"off", U"away", U"completely", U"alone",
  };
  return words;
}

// Nouns and adjectives that end in "ly" but are not adverbs.
const WordSet &LyNonAdverbs() {
  static const WordSet words = {
      U"family",   U"supply",  U"anomaly", U"assembly", U"ally",
      U"reply",    U"early",   U"only",    U"elderly",  U"monopoly",
      U"homily",   U"belly",   U"rally",   U"friendly", U"lonely",
      U"daily",    U"weekly",  U"monthly", U"yearly",   U"likely",
      U"costly",   U"timely",  U"orderly", U"holy",     U"ugly",
  };
  return words;
}

bool EndsWith(std::u32string_view word, std::u32string_view suffix) {
  return word.size() >= suffix.size() &&
         word.substr(word.size() - suffix.size()) == suffix;
}

bool IsLyAdverb(std::u32string_view lower) {
  return lower.size() >= 5 && EndsWith(lower, U"ly") &&
         !LyNonAdverbs().count(std::u32string(lower));
}

// True if the token can begin the noun phrase owned by a possessive.
bool BeginsNounPhrase(const Token &token) {
  if (!token.word) return false;
  std::u32string lower = Lowercase(token.text);
  if (ClosedClassWords().count(lower)) return false;
  if (IsLyAdverb(lower)) return false;
  return true;
}

struct CompoundPattern {
  std::u32string_view first;
  std::u32string_view second;
};

constexpr CompoundPattern kCompoundPatterns[] = {
    {U"he", U"she"},         {U"she", U"he"},
    {U"him", U"her"},        {U"her", U"him"},
    {U"his", U"her"},        {U"her", U"his"},
    {U"himself", U"herself"}, {U"herself", U"himself"},
};

bool IsCompoundPair(std::u32string_view a, std::u32string_view b) {
  for (const CompoundPattern &p : kCompoundPatterns) {
    if (p.first == a && p.second == b) return true;
  }
  return false;
}

// Splits "his or her" into its two lemmas; single lemmas come back as-is.
std::pair<std::string, std::string> CompoundParts(std::string_view lemma) {
  size_t sep = lemma.find(" or ");
  if (sep == std::string_view::npos) {
    return {std::string(lemma), std::string()};
  }
  return {std::string(lemma.substr(0, sep)),
          std::string(lemma.substr(sep + 4))};
}

const WordSet &AdverbSkips() {
  static const WordSet words = {U"also",   U"often", U"always",
                                U"never",  U"still", U"now"};
  return words;
}

const WordSet &Modals() {
  static const WordSet words = {U"should", U"may",   U"can",   U"will",
                                U"must",   U"might", U"could", U"would"};
  return words;
}

// Words ending in "s" that are not third-person verbs.
const WordSet &NonVerbsEndingInS() {
  static const WordSet words = {
      U"this",     U"his",        U"hers",      U"its",     U"thus",
      U"as",       U"yes",        U"perhaps",   U"sometimes",
      U"besides",  U"whereas",    U"towards",   U"afterwards",
      U"nevertheless", U"always", U"hers",      U"ours",    U"theirs",
      U"yours",    U"was",        U"has",       U"does",    U"is",
  };
  return words;
}

bool IsAllLower(std::u32string_view word) {
  return std::all_of(word.begin(), word.end(),
                     [](char32_t c) { return !IsLetter(c) || !IsUpper(c); });
}

// Third-person singular to plural/base form.
std::u32string DropThirdPersonS(std::u32string_view verb) {
  if (verb.size() > 4 && EndsWith(verb, U"ies")) {
    return std::u32string(verb.substr(0, verb.size() - 3)) + U"y";
  }
  for (std::u32string_view suffix :
       {U"sses", U"shes", U"ches", U"xes", U"zzes", U"oes"}) {
    if (EndsWith(verb, suffix)) {
      return std::u32string(verb.substr(0, verb.size() - 2));
    }
  }
  return std::u32string(verb.substr(0, verb.size() - 1));
}

const std::vector<std::u32string> &GuardWords() {
  static const std::vector<std::u32string> words = {U"female", U"male",
                                                    U"woman", U"man"};
  return words;
}

bool MentionsGender(std::string_view antecedent) {
  for (const Token &token : Tokenize(DecodeUtf8(antecedent))) {
    if (!token.word) continue;
    std::u32string lower = Lowercase(token.text);
    for (const std::u32string &word : GuardWords()) {
      if (lower == word) return true;
    }
  }
  return false;
}

// Copies the case of the first character of `surface` onto `replacement`.
std::string MatchCapitalization(std::u32string_view surface,
                                std::string_view replacement) {
  std::u32string out = DecodeUtf8(replacement);
  if (!surface.empty() && !out.empty() && IsUpper(surface.front())) {
    out.front() = ToUpper(out.front());
  }
  return EncodeUtf8(out);
}

struct Replacement {
  Span span;
  std::u32string after;
};

}  // namespace

std::string_view RoleName(PronounRole role) {
  switch (role) {
    case PronounRole::kSubject: return "subject";
    case PronounRole::kObject: return "object";
    case PronounRole::kPossessiveDeterminer: return "possessive_determiner";
    case PronounRole::kPossessivePronoun: return "possessive_pronoun";
    case PronounRole::kReflexive: return "reflexive";
  }
  return "subject";
}

PronounRole ParseRole(std::string_view name) {
  for (PronounRole role :
       {PronounRole::kSubject, PronounRole::kObject,
        PronounRole::kPossessiveDeterminer, PronounRole::kPossessivePronoun,
        PronounRole::kReflexive}) {
    if (RoleName(role) == name) return role;
  }
  throw ArgumentError("unknown role '" + std::string(name) + "'");
}

void to_json(ordered_json &j, const EditRecord &e) {
  j = ordered_json::object();
  j["pmid"] = e.pmid;
  j["start"] = e.start;
  j["end"] = e.end;
  j["before"] = e.before;
  j["after"] = e.after;
  j["role"] = RoleName(e.role);
  j["antecedent_text"] = e.antecedent_text;
  if (e.verb_fix) {
    j["verb_fix"] = {{"start", e.verb_fix->start},
                     {"end", e.verb_fix->end},
                     {"before", e.verb_fix->before},
                     {"after", e.verb_fix->after}};
  }
}

void from_json(const ordered_json &j, EditRecord &e) {
  e.pmid = j.at("pmid").get<std::string>();
  e.start = j.at("start").get<size_t>();
  e.end = j.at("end").get<size_t>();
  e.before = j.at("before").get<std::string>();
  e.after = j.at("after").get<std::string>();
  e.role = ParseRole(j.at("role").get<std::string>());
  e.antecedent_text = j.at("antecedent_text").get<std::string>();
  e.verb_fix.reset();
  if (j.contains("verb_fix") && !j.at("verb_fix").is_null()) {
    const ordered_json &v = j.at("verb_fix");
    e.verb_fix = VerbFix{v.at("start").get<size_t>(), v.at("end").get<size_t>(),
                         v.at("before").get<std::string>(),
                         v.at("after").get<std::string>()};
  }
}

std::vector<PronounInstance> DetectCompounds(
    std::string_view text, const std::vector<PronounInstance> &instances) {
  const std::u32string chars = DecodeUtf8(text);
  std::vector<PronounInstance> out;
  for (size_t i = 0; i < instances.size(); ++i) {
    const PronounInstance &first = instances[i];
    if (i + 1 < instances.size()) {
      const PronounInstance &second = instances[i + 1];
      Span a = first.span();
      Span b = second.span();
      if (a.end <= b.start && b.end <= chars.size() &&
          Lowercase(chars.substr(a.end, b.start - a.end)) == U" or " &&
          IsCompoundPair(Lowercase(chars.substr(a.start, a.length())),
                         Lowercase(chars.substr(b.start, b.length())))) {
        PronounInstance merged = first;
        merged.surface = EncodeUtf8(chars.substr(a.start, b.end - a.start));
        merged.lemma = Lowercase(merged.surface);
        merged.gender = Gender::kCompound;
        out.push_back(std::move(merged));
        ++i;
        continue;
      }
    }
    out.push_back(first);
  }
  return out;
}

PronounRole AssignRole(std::string_view text, const PronounInstance &instance) {
  std::u32string chars = DecodeUtf8(text);
  return AssignRole(chars, Tokenize(chars), instance);
}

PronounRole AssignRole(std::u32string_view text,
                       const std::vector<Token> &tokens,
                       const PronounInstance &instance) {
  (void)text;
  auto [first, second] = CompoundParts(instance.lemma);
  auto is_any = [&](std::string_view form) {
    return first == form || second == form;
  };
  if (is_any("he") || is_any("she")) return PronounRole::kSubject;
  if (is_any("himself") || is_any("herself")) return PronounRole::kReflexive;
  if (is_any("him")) return PronounRole::kObject;
  if (!second.empty()) {
    // "his or her" / "her or his".
    return PronounRole::kPossessiveDeterminer;
  }
  if (first == "hers") return PronounRole::kPossessivePronoun;

  size_t next = TokenAt(tokens, instance.span().end);
  bool noun_follows = next < tokens.size() && BeginsNounPhrase(tokens[next]);
  if (first == "his") {
    return noun_follows ? PronounRole::kPossessiveDeterminer
                        : PronounRole::kPossessivePronoun;
  }
  if (first == "her") {
    return noun_follows ? PronounRole::kPossessiveDeterminer
                        : PronounRole::kObject;
  }
  // Unknown forms from custom lexicons.
  return PronounRole::kSubject;
}

std::string MapPronoun(std::string_view lemma, PronounRole role) {
  (void)lemma;
  switch (role) {
    case PronounRole::kSubject: return "they";
    case PronounRole::kObject: return "them";
    case PronounRole::kPossessiveDeterminer: return "their";
    case PronounRole::kPossessivePronoun: return "theirs";
    case PronounRole::kReflexive: return "themselves";
  }
  return "they";
}

std::optional<VerbFix> FixVerbAgreement(const std::vector<Token> &tokens,
                                        size_t subject_index) {
  size_t i = subject_index + 1;
  for (int skipped = 0; i < tokens.size() && skipped < 2; ++i, ++skipped) {
    if (!tokens[i].word) return std::nullopt;
    std::u32string lower = Lowercase(tokens[i].text);
    if (!EndsWith(lower, U"ly") && !AdverbSkips().count(lower)) break;
  }
  if (i >= tokens.size() || !tokens[i].word) return std::nullopt;
  const Token &verb = tokens[i];
  if (!IsAllLower(verb.text)) return std::nullopt;

  std::u32string after;
  if (verb.text == U"is") {
    after = U"are";
  } else if (verb.text == U"was") {
    after = U"were";
  } else if (verb.text == U"has") {
    after = U"have";
  } else if (verb.text == U"does") {
    after = U"do";
  } else if (Modals().count(verb.text)) {
    return std::nullopt;
  } else if (verb.text.size() >= 3 && EndsWith(verb.text, U"s") &&
             !EndsWith(verb.text, U"ss") && !EndsWith(verb.text, U"us") &&
             !EndsWith(verb.text, U"is") &&
             !NonVerbsEndingInS().count(verb.text)) {
    after = DropThirdPersonS(verb.text);
  } else {
    return std::nullopt;
  }
  return VerbFix{verb.start, verb.end, EncodeUtf8(verb.text),
                 EncodeUtf8(after)};
}

NeutralizeResult NeutralizeAbstract(
    const Abstract &abstract, const std::vector<ClassifiedInstance> &instances,
    const NeutralizeOptions &options) {
  const std::u32string text = DecodeUtf8(abstract.text);
  const std::vector<Token> tokens = Tokenize(text);

  std::vector<const ClassifiedInstance *> ordered;
  for (const ClassifiedInstance &c : instances) {
    const PronounInstance &p = c.instance();
    if (p.pmid != abstract.pmid) {
      throw IntegrityError("instance " + p.instance_id +
                           " does not belong to abstract " + abstract.pmid);
    }
    Span span = p.span();
    if (span.end > text.size() ||
        EncodeUtf8(text.substr(span.start, span.length())) != p.surface) {
      throw IntegrityError("instance " + p.instance_id +
                           " does not match abstract text");
    }
    ordered.push_back(&c);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const ClassifiedInstance *a, const ClassifiedInstance *b) {
              return a->instance().offset < b->instance().offset;
            });
  for (size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i - 1]->instance().span().Overlaps(
            ordered[i]->instance().span())) {
      throw IntegrityError("overlapping instances " +
                           ordered[i - 1]->instance().instance_id + " and " +
                           ordered[i]->instance().instance_id);
    }
  }

  NeutralizeResult result;
  std::vector<Span> pronoun_spans;
  for (const ClassifiedInstance *c : ordered) {
    if (c->label != AntecedentLabel::kOccupation) continue;
    const PronounInstance &p = c->instance();
    if (options.gender_guard && MentionsGender(c->resolved.antecedent_text)) {
      Warn("gender guard kept " + p.instance_id + " (antecedent \"" +
           c->resolved.antecedent_text + "\")");
      continue;
    }
    Span span = p.span();
    PronounRole role = AssignRole(text, tokens, p);
    std::u32string surface = text.substr(span.start, span.length());
    EditRecord edit;
    edit.pmid = abstract.pmid;
    edit.start = span.start;
    edit.end = span.end;
    edit.before = p.surface;
    edit.after = MatchCapitalization(surface, MapPronoun(p.lemma, role));
    edit.role = role;
    edit.antecedent_text = c->resolved.antecedent_text;
    if (edit.after == edit.before) continue;
    if (options.verb_agreement && role == PronounRole::kSubject) {
      size_t last = TokenAt(tokens, span.end);
      if (last > 0) edit.verb_fix = FixVerbAgreement(tokens, last - 1);
    }
    pronoun_spans.push_back(span);
    result.edits.push_back(std::move(edit));
  }

  // A verb fix never wins over a pronoun replacement.
  for (EditRecord &edit : result.edits) {
    if (!edit.verb_fix) continue;
    Span verb{edit.verb_fix->start, edit.verb_fix->end};
    bool clash = std::any_of(pronoun_spans.begin(), pronoun_spans.end(),
                             [&](const Span &s) { return s.Overlaps(verb); });
    if (clash) {
      Warn("dropped verb fix overlapping a pronoun edit in " + edit.pmid);
      edit.verb_fix.reset();
    }
  }

  std::vector<Replacement> replacements;
  for (const EditRecord &edit : result.edits) {
    replacements.push_back({{edit.start, edit.end}, DecodeUtf8(edit.after)});
    if (edit.verb_fix) {
      replacements.push_back({{edit.verb_fix->start, edit.verb_fix->end},
                              DecodeUtf8(edit.verb_fix->after)});
    }
  }
  std::sort(replacements.begin(), replacements.end(),
            [](const Replacement &a, const Replacement &b) {
              return a.span.start > b.span.start;
            });
  std::u32string out = text;
  for (const Replacement &r : replacements) {
    out.replace(r.span.start, r.span.length(), r.after);
  }
  result.text = EncodeUtf8(out);
  return result;
}

std::string RevertEdits(std::string_view new_text,
                        const std::vector<EditRecord> &edits) {
  struct Unit {
    size_t start;
    size_t end;
    std::u32string before;
    std::u32string after;
  };
  std::vector<Unit> units;
  for (const EditRecord &edit : edits) {
    units.push_back({edit.start, edit.end, DecodeUtf8(edit.before),
                     DecodeUtf8(edit.after)});
    if (edit.verb_fix) {
      units.push_back({edit.verb_fix->start, edit.verb_fix->end,
                       DecodeUtf8(edit.verb_fix->before),
                       DecodeUtf8(edit.verb_fix->after)});
    }
  }
  std::sort(units.begin(), units.end(),
            [](const Unit &a, const Unit &b) { return a.start < b.start; });

  const std::u32string text = DecodeUtf8(new_text);
  std::u32string original;
  size_t cursor = 0;      // position in new text
  size_t orig_pos = 0;    // position in original text
  for (const Unit &unit : units) {
    if (unit.start < orig_pos || unit.end - unit.start != unit.before.size()) {
      throw IntegrityError("inconsistent edit records");
    }
    size_t gap = unit.start - orig_pos;
    size_t new_start = cursor + gap;
    if (new_start + unit.after.size() > text.size() ||
        text.compare(new_start, unit.after.size(), unit.after) != 0) {
      throw IntegrityError("edit records do not match text");
    }
    original.append(text, cursor, gap);
    original += unit.before;
    cursor = new_start + unit.after.size();
    orig_pos = unit.end;
  }
  original.append(text, cursor, std::u32string::npos);
  return EncodeUtf8(original);
}

}  // namespace neutrapipe
