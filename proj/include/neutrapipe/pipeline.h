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

#ifndef NEUTRAPIPE_PIPELINE_H_
#define NEUTRAPIPE_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neutrapipe/corpus.h"
#include "neutrapipe/lexicon.h"
#include "neutrapipe/neutralizer.h"
#include "neutrapipe/oracle.h"
#include "neutrapipe/scanner.h"

namespace neutrapipe {

struct PipelineConfig {
  // Empty means the built-in pronoun set.
  std::string pronoun_lexicon;
  std::string occupation_lexicon;
  std::string background;
  std::string rules;
  OracleBackendConfig backend;
  std::optional<std::string> cache;
  std::optional<YearRange> years;
  uint64_t seed = 0;
  bool verb_agreement = true;
  bool gender_guard = false;
  bool strict_match = false;
  int workers = 1;
  size_t max_failures = 0;

  // Throws ConfigError if a referenced file does not exist.
  void Validate() const;
};

// Directory holding the shipped lexicons and prompt texts.
std::string DefaultDataDir();

std::string ReadTextFile(const std::string &path);

std::map<std::string, Abstract> IndexByPmid(
    const std::vector<Abstract> &abstracts);

// Merges compound pronouns abstract by abstract. Instances whose abstract is
// unknown pass through unchanged.
std::vector<PronounInstance> MergeCompounds(
    const std::vector<PronounInstance> &instances,
    const std::map<std::string, Abstract> &abstracts);

struct NeutralizeCorpusResult {
  std::vector<Abstract> abstracts;
  std::vector<EditRecord> edits;
};

// Neutralizes every abstract (in input order) with its classified instances.
NeutralizeCorpusResult NeutralizeCorpus(
    const std::vector<Abstract> &abstracts,
    const std::vector<ClassifiedInstance> &classified,
    const NeutralizeOptions &options);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_PIPELINE_H_
