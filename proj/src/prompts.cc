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

#include "neutrapipe/prompts.h"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <memory>

#include "neutrapipe/errors.h"
#include "neutrapipe/log.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

namespace {

constexpr std::string_view kResolutionSystem =
    "You are a helpful assistant with identifying the direct antecedent of a "
    "pronoun. Here is your antecedent_background knowledge: ";
constexpr std::string_view kResolutionUser =
    "Identify the direct antecedent of the pronoun marked with [START] and "
    "[END] in the following abstract: ";
constexpr std::string_view kResolutionUserTail =
    ". Only answer with the antecedent.";

constexpr std::string_view kClassificationSystem =
    "You are a helpful assistant following these classification rules ";
constexpr std::string_view kClassificationUser =
    "In the following abstract, classify which label the noun \"";
constexpr std::string_view kClassificationUserMiddle =
    "\" in the context of the abstract ";
constexpr std::string_view kClassificationUserTail =
    " is referring to: \"patient,\" \"occupation,\" \"named individual,\" "
    "\"author,\" \"animal,\" or \"other.\" Only output the label, no other "
    "text.";

struct QuotePair {
  std::u32string_view open;
  std::u32string_view close;
};

constexpr QuotePair kQuotes[] = {
    {U"\"", U"\""}, {U"'", U"'"},   {U"“", U"”"},
    {U"‘", U"’"}, {U"``", U"''"}, {U"`", U"`"},
};

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::string HighlightPronoun(std::string_view abstract_text,
                             const PronounInstance &instance) {
  std::u32string text = DecodeUtf8(abstract_text);
  Span span = instance.span();
  if (span.end > text.size() ||
      EncodeUtf8(text.substr(span.start, span.length())) != instance.surface) {
    throw IntegrityError("instance " + instance.instance_id +
                         " does not match abstract text at offset " +
                         std::to_string(instance.offset));
  }
  std::string out = EncodeUtf8(text.substr(0, span.start));
  out += kStartMarker;
  out += instance.surface;
  out += kEndMarker;
  out += EncodeUtf8(text.substr(span.end));
  return out;
}

PromptPair BuildResolutionPrompt(const PronounInstance &instance,
                                 const Abstract &abstract,
                                 std::string_view background_text) {
  if (background_text.empty()) {
    Warn("empty antecedent background; resolution prompt has an empty slot");
  }
  PromptPair prompt;
  prompt.system_content = std::string(kResolutionSystem);
  prompt.system_content += background_text;
  prompt.user_content = std::string(kResolutionUser);
  prompt.user_content += HighlightPronoun(abstract.text, instance);
  prompt.user_content += kResolutionUserTail;
  return prompt;
}

PromptPair BuildClassificationPrompt(const ResolvedInstance &resolved,
                                     const Abstract &abstract,
                                     std::string_view rules_text) {
  if (rules_text.empty()) {
    Warn("empty classification rules; classification prompt has an empty "
         "slot");
  }
  PromptPair prompt;
  prompt.system_content = std::string(kClassificationSystem);
  prompt.system_content += rules_text;
  prompt.system_content += ".";
  prompt.user_content = std::string(kClassificationUser);
  prompt.user_content += resolved.antecedent_text;
  prompt.user_content += kClassificationUserMiddle;
  prompt.user_content += HighlightPronoun(abstract.text, resolved.instance);
  prompt.user_content += kClassificationUserTail;
  return prompt;
}

std::optional<QueryKind> DetectQueryKind(const PromptPair &prompt) {
  if (StartsWith(prompt.system_content, kResolutionSystem)) {
    return QueryKind::kResolution;
  }
  if (StartsWith(prompt.system_content, kClassificationSystem)) {
    return QueryKind::kClassification;
  }
  return std::nullopt;
}

std::string PromptHash(const PromptPair &prompt) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  static constexpr char kSeparator[] = "\x1e";
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), prompt.system_content.data(),
                       prompt.system_content.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), kSeparator, 1) != 1 ||
      EVP_DigestUpdate(ctx.get(), prompt.user_content.data(),
                       prompt.user_content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string CleanResolutionReply(std::string_view reply) {
  std::u32string text = Trim(DecodeUtf8(reply));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const QuotePair &q : kQuotes) {
      if (text.size() >= q.open.size() + q.close.size() &&
          std::u32string_view(text).substr(0, q.open.size()) == q.open &&
          std::u32string_view(text).substr(text.size() - q.close.size()) ==
              q.close) {
        text = Trim(std::u32string_view(text).substr(
            q.open.size(), text.size() - q.open.size() - q.close.size()));
        changed = true;
        break;
      }
    }
  }
  return EncodeUtf8(text);
}

std::optional<AntecedentLabel> ParseLabelReply(std::string_view reply) {
  std::u32string text = Lowercase(DecodeUtf8(reply));
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && !IsLetter(text[begin])) ++begin;
  while (end > begin && !IsLetter(text[end - 1])) --end;
  // Collapse internal whitespace.
  std::u32string norm;
  bool space = false;
  for (size_t i = begin; i < end; ++i) {
    if (IsSpace(text[i])) {
      space = true;
      continue;
    }
    if (space && !norm.empty()) norm.push_back(U' ');
    space = false;
    norm.push_back(text[i]);
  }
  static const std::pair<std::u32string_view, AntecedentLabel> kAliases[] = {
      {U"patient", AntecedentLabel::kPatientTrialParticipant},
      {U"trial participant", AntecedentLabel::kPatientTrialParticipant},
      {U"patient/trial participant", AntecedentLabel::kPatientTrialParticipant},
      {U"named individual", AntecedentLabel::kNamedIndividual},
      {U"proper name", AntecedentLabel::kNamedIndividual},
      {U"occupation", AntecedentLabel::kOccupation},
      {U"author", AntecedentLabel::kAuthorOfAbstract},
      {U"author of the abstract", AntecedentLabel::kAuthorOfAbstract},
      {U"animal", AntecedentLabel::kAnimal},
      {U"other", AntecedentLabel::kOther},
  };
  for (const auto &[alias, label] : kAliases) {
    if (norm == alias) return label;
  }
  return std::nullopt;
}

}  // namespace neutrapipe
