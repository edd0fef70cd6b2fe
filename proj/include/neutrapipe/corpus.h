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

#ifndef NEUTRAPIPE_CORPUS_H_
#define NEUTRAPIPE_CORPUS_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "neutrapipe/errors.h"

namespace neutrapipe {

// Half-open range of scalar-value offsets.
struct Span {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool Overlaps(const Span &other) const {
    return start < other.end && other.start < end;
  }
  bool operator==(const Span &) const = default;
};

// One abstract. The date is carried verbatim and only its year is ever read.
struct Abstract {
  std::string pmid;
  std::optional<std::string> date;
  std::string text;

  // Year prefix of the date, if the date starts with four digits.
  std::optional<int> year() const;

  bool operator==(const Abstract &) const = default;
};

enum class Gender { kMasculine, kFeminine, kCompound };

// One gendered-pronoun occurrence, keyed by (pmid, offset).
struct PronounInstance {
  std::string instance_id;
  std::string pmid;
  size_t offset = 0;
  std::string surface;
  std::string lemma;
  Gender gender = Gender::kMasculine;

  Span span() const;
  bool operator==(const PronounInstance &) const = default;
};

enum class AntecedentLabel {
  kPatientTrialParticipant,
  kNamedIndividual,
  kOccupation,
  kAuthorOfAbstract,
  kAnimal,
  kOther,
};

inline constexpr int kNumLabels = 6;

// All labels in declaration order.
const std::vector<AntecedentLabel> &AllLabels();

struct ResolvedInstance {
  PronounInstance instance;
  std::string antecedent_text;
  std::optional<Span> antecedent_span;
  // Reply was unusually long. Kept in memory only; not serialized.
  bool suspicious = false;

  bool operator==(const ResolvedInstance &other) const {
    return instance == other.instance &&
           antecedent_text == other.antecedent_text &&
           antecedent_span == other.antecedent_span;
  }
};

enum class LabelSource { kOracle, kHumanAnnotation, kReconciled };

struct ClassifiedInstance {
  ResolvedInstance resolved;
  AntecedentLabel label = AntecedentLabel::kOther;
  LabelSource label_source = LabelSource::kOracle;

  const PronounInstance &instance() const { return resolved.instance; }
  bool operator==(const ClassifiedInstance &) const = default;
};

// A per-instance stage failure. Failures are data, not fatal errors.
struct InstanceFailure {
  std::string instance_id;
  std::string stage;
  std::string reason;
  std::optional<std::string> raw_reply;

  bool operator==(const InstanceFailure &) const = default;
};

// Wire strings.
std::string_view GenderName(Gender gender);
Gender ParseGender(std::string_view name);
std::string_view LabelName(AntecedentLabel label);
AntecedentLabel ParseLabel(std::string_view name);
std::string_view LabelSourceName(LabelSource source);
LabelSource ParseLabelSource(std::string_view name);

// Builds the canonical "pmid:offset" instance id.
std::string MakeInstanceId(std::string_view pmid, size_t offset);

// JSON conversions. from_json throws nlohmann exceptions or ArgumentError on
// schema violations; the readers below turn those into record errors.
void to_json(nlohmann::ordered_json &j, const Abstract &a);
void from_json(const nlohmann::ordered_json &j, Abstract &a);
void to_json(nlohmann::ordered_json &j, const PronounInstance &p);
void from_json(const nlohmann::ordered_json &j, PronounInstance &p);
void to_json(nlohmann::ordered_json &j, const ResolvedInstance &r);
void from_json(const nlohmann::ordered_json &j, ResolvedInstance &r);
void to_json(nlohmann::ordered_json &j, const ClassifiedInstance &c);
void from_json(const nlohmann::ordered_json &j, ClassifiedInstance &c);
void to_json(nlohmann::ordered_json &j, const InstanceFailure &f);
void from_json(const nlohmann::ordered_json &j, InstanceFailure &f);

// A bad input line. Reading continues past it.
struct RecordError {
  size_t line = 0;
  std::string message;
};

template <typename T>
struct ReadResult {
  std::vector<T> records;
  std::vector<RecordError> errors;
};

namespace internal {
// Calls `parse` for every non-blank line, collecting errors.
void ForEachJsonLine(std::istream &in,
                     const std::function<void(const nlohmann::ordered_json &)>
                         &parse,
                     std::vector<RecordError> *errors);
}  // namespace internal

template <typename T>
ReadResult<T> ReadRecords(std::istream &in) {
  ReadResult<T> result;
  internal::ForEachJsonLine(
      in,
      [&](const nlohmann::ordered_json &j) {
        result.records.push_back(j.get<T>());
      },
      &result.errors);
  return result;
}

inline ReadResult<Abstract> ReadAbstracts(std::istream &in) {
  return ReadRecords<Abstract>(in);
}

// Writes one JSON object per line. Throws WriteError carrying the number of
// records written if the stream fails.
template <typename T>
void WriteRecords(const std::vector<T> &records, std::ostream &out) {
  size_t written = 0;
  for (const T &record : records) {
    nlohmann::ordered_json j = record;
    out << j.dump() << '\n';
    if (!out) {
      throw WriteError("output sink failed after " + std::to_string(written) +
                           " records",
                       written);
    }
    ++written;
  }
  out.flush();
  if (!out) throw WriteError("output sink failed on flush", written);
}

// Serializes one record to a single JSON line (no trailing newline).
template <typename T>
std::string ToJsonLine(const T &record) {
  nlohmann::ordered_json j = record;
  return j.dump();
}

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_CORPUS_H_
