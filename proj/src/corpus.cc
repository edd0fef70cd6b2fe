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

#include "neutrapipe/corpus.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "neutrapipe/errors.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<AntecedentLabel, std::string_view>, kNumLabels>
    kLabelNames = {{
        {AntecedentLabel::kPatientTrialParticipant, "patient"},
        {AntecedentLabel::kNamedIndividual, "named individual"},
        {AntecedentLabel::kOccupation, "occupation"},
        {AntecedentLabel::kAuthorOfAbstract, "author"},
        {AntecedentLabel::kAnimal, "animal"},
        {AntecedentLabel::kOther, "other"},
    }};

bool IsNumeric(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::string RequireString(const ordered_json &j, const char *key) {
  if (!j.contains(key)) {
    throw ArgumentError(std::string("missing field '") + key + "'");
  }
  if (!j.at(key).is_string()) {
    throw ArgumentError(std::string("field '") + key + "' is not a string");
  }
  return j.at(key).get<std::string>();
}

size_t RequireOffset(const ordered_json &j, const char *key) {
  if (!j.contains(key)) {
    throw ArgumentError(std::string("missing field '") + key + "'");
  }
  const ordered_json &v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ArgumentError(std::string("field '") + key +
                        "' is not a non-negative integer");
  }
  return v.get<size_t>();
}

}  // namespace

std::optional<int> Abstract::year() const {
  if (!date || date->size() < 4) return std::nullopt;
  std::string_view prefix(date->data(), 4);
  if (!IsNumeric(prefix)) return std::nullopt;
  return std::stoi(std::string(prefix));
}

Span PronounInstance::span() const {
  return Span{offset, offset + CodePointLength(surface)};
}

const std::vector<AntecedentLabel> &AllLabels() {
  static const std::vector<AntecedentLabel> labels = [] {
    std::vector<AntecedentLabel> v;
    for (const auto &[label, name] : kLabelNames) v.push_back(label);
    return v;
  }();
  return labels;
}

std::string_view GenderName(Gender gender) {
  switch (gender) {
    case Gender::kMasculine: return "masculine";
    case Gender::kFeminine: return "feminine";
    case Gender::kCompound: return "compound";
  }
  return "masculine";
}

Gender ParseGender(std::string_view name) {
  if (name == "masculine") return Gender::kMasculine;
  if (name == "feminine") return Gender::kFeminine;
  if (name == "compound") return Gender::kCompound;
  throw ArgumentError("unknown gender '" + std::string(name) + "'");
}

std::string_view LabelName(AntecedentLabel label) {
  for (const auto &[l, name] : kLabelNames) {
    if (l == label) return name;
  }
  return "other";
}

AntecedentLabel ParseLabel(std::string_view name) {
  for (const auto &[label, n] : kLabelNames) {
    if (n == name) return label;
  }
  throw ArgumentError("unknown label '" + std::string(name) + "'");
}

std::string_view LabelSourceName(LabelSource source) {
  switch (source) {
    case LabelSource::kOracle: return "oracle";
    case LabelSource::kHumanAnnotation: return "human_annotation";
    case LabelSource::kReconciled: return "reconciled";
  }
  return "oracle";
}

LabelSource ParseLabelSource(std::string_view name) {
  if (name == "oracle") return LabelSource::kOracle;
  if (name == "human_annotation") return LabelSource::kHumanAnnotation;
  if (name == "reconciled") return LabelSource::kReconciled;
  throw ArgumentError("unknown label_source '" + std::string(name) + "'");
}

std::string MakeInstanceId(std::string_view pmid, size_t offset) {
  return std::string(pmid) + ":" + std::to_string(offset);
}

void to_json(ordered_json &j, const Abstract &a) {
  j = ordered_json::object();
  j["pmid"] = a.pmid;
  if (a.date) j["date"] = *a.date;
  j["text"] = a.text;
}

void from_json(const ordered_json &j, Abstract &a) {
  if (!j.is_object()) throw ArgumentError("record is not a JSON object");
  a.pmid = RequireString(j, "pmid");
  if (!IsNumeric(a.pmid)) {
    throw ArgumentError("pmid '" + a.pmid + "' is not numeric");
  }
  a.date.reset();
  if (j.contains("date") && !j.at("date").is_null()) {
    a.date = RequireString(j, "date");
  }
  a.text = RequireString(j, "text");
  if (a.text.empty()) throw ArgumentError("empty text");
}

void to_json(ordered_json &j, const PronounInstance &p) {
  j = ordered_json::object();
  j["instance_id"] = p.instance_id;
  j["pmid"] = p.pmid;
  j["offset"] = p.offset;
  j["surface"] = p.surface;
  j["lemma"] = p.lemma;
  j["gender"] = GenderName(p.gender);
}

void from_json(const ordered_json &j, PronounInstance &p) {
  if (!j.is_object()) throw ArgumentError("record is not a JSON object");
  p.instance_id = RequireString(j, "instance_id");
  p.pmid = RequireString(j, "pmid");
  p.offset = RequireOffset(j, "offset");
  p.surface = RequireString(j, "surface");
  if (p.surface.empty()) throw ArgumentError("empty surface");
  p.lemma = RequireString(j, "lemma");
  p.gender = ParseGender(RequireString(j, "gender"));
}

namespace {

void WriteResolvedFields(ordered_json &j, const ResolvedInstance &r) {
  j["antecedent_text"] = r.antecedent_text;
  if (r.antecedent_span) {
    j["antecedent_span"] = {r.antecedent_span->start, r.antecedent_span->end};
  }
}

void ReadResolvedFields(const ordered_json &j, ResolvedInstance &r) {
  from_json(j, r.instance);
  r.antecedent_text = RequireString(j, "antecedent_text");
  if (r.antecedent_text.empty()) throw ArgumentError("empty antecedent_text");
  r.antecedent_span.reset();
  if (j.contains("antecedent_span") && !j.at("antecedent_span").is_null()) {
    const ordered_json &s = j.at("antecedent_span");
    if (!s.is_array() || s.size() != 2) {
      throw ArgumentError("antecedent_span must be [start, end]");
    }
    Span span{s[0].get<size_t>(), s[1].get<size_t>()};
    if (span.end < span.start) throw ArgumentError("inverted antecedent_span");
    r.antecedent_span = span;
  }
}

}  // namespace

void to_json(ordered_json &j, const ResolvedInstance &r) {
  to_json(j, r.instance);
  WriteResolvedFields(j, r);
}

void from_json(const ordered_json &j, ResolvedInstance &r) {
  ReadResolvedFields(j, r);
  r.suspicious = false;
}

void to_json(ordered_json &j, const ClassifiedInstance &c) {
  to_json(j, c.resolved);
  j["label"] = LabelName(c.label);
  j["label_source"] = LabelSourceName(c.label_source);
}

void from_json(const ordered_json &j, ClassifiedInstance &c) {
  from_json(j, c.resolved);
  c.label = ParseLabel(RequireString(j, "label"));
  c.label_source = ParseLabelSource(RequireString(j, "label_source"));
}

void to_json(ordered_json &j, const InstanceFailure &f) {
  j = ordered_json::object();
  j["instance_id"] = f.instance_id;
  j["stage"] = f.stage;
  j["reason"] = f.reason;
  if (f.raw_reply) j["raw_reply"] = *f.raw_reply;
}

void from_json(const ordered_json &j, InstanceFailure &f) {
  f.instance_id = RequireString(j, "instance_id");
  f.stage = RequireString(j, "stage");
  f.reason = RequireString(j, "reason");
  f.raw_reply.reset();
  if (j.contains("raw_reply")) f.raw_reply = RequireString(j, "raw_reply");
}

namespace internal {

void ForEachJsonLine(std::istream &in,
                     const std::function<void(const ordered_json &)> &parse,
                     std::vector<RecordError> *errors) {
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; })) {
      continue;
    }
    try {
      parse(ordered_json::parse(line));
    } catch (const std::exception &e) {
      errors->push_back(RecordError{line_number, e.what()});
    }
  }
}

}  // namespace internal

}  // namespace neutrapipe
