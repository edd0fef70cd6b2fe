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

#include "neutrapipe/pipeline.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "neutrapipe/errors.h"

#ifndef NEUTRAPIPE_DATA_DIR
#define NEUTRAPIPE_DATA_DIR "data"
#endif

namespace neutrapipe {

namespace {

void RequireFile(const std::string &path, const char *what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError(std::string(what) + " not found: " + path);
  }
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!pronoun_lexicon.empty()) RequireFile(pronoun_lexicon, "pronoun lexicon");
  RequireFile(occupation_lexicon, "occupation lexicon");
  RequireFile(background, "background text");
  RequireFile(rules, "classification rules");
  if (backend.mock_script) RequireFile(*backend.mock_script, "mock script");
  if (backend.transcript) RequireFile(*backend.transcript, "transcript");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  backend.Validate();
}

std::string DefaultDataDir() {
  if (const char *dir = std::getenv("NEUTRAPIPE_DATA_DIR")) return dir;
  return NEUTRAPIPE_DATA_DIR;
}

std::string ReadTextFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

std::map<std::string, Abstract> IndexByPmid(
    const std::vector<Abstract> &abstracts) {
  std::map<std::string, Abstract> index;
  for (const Abstract &a : abstracts) {
    if (!index.emplace(a.pmid, a).second) {
      throw ArgumentError("duplicate pmid " + a.pmid);
    }
  }
  return index;
}

std::vector<PronounInstance> MergeCompounds(
    const std::vector<PronounInstance> &instances,
    const std::map<std::string, Abstract> &abstracts) {
  std::vector<PronounInstance> out;
  size_t i = 0;
  while (i < instances.size()) {
    size_t j = i;
    while (j < instances.size() && instances[j].pmid == instances[i].pmid) ++j;
    std::vector<PronounInstance> group(instances.begin() + i,
                                       instances.begin() + j);
    auto it = abstracts.find(instances[i].pmid);
    if (it != abstracts.end()) {
      std::sort(group.begin(), group.end(),
                [](const PronounInstance &a, const PronounInstance &b) {
                  return a.offset < b.offset;
                });
      group = DetectCompounds(it->second.text, group);
    }
    out.insert(out.end(), group.begin(), group.end());
    i = j;
  }
  return out;
}

NeutralizeCorpusResult NeutralizeCorpus(
    const std::vector<Abstract> &abstracts,
    const std::vector<ClassifiedInstance> &classified,
    const NeutralizeOptions &options) {
  std::map<std::string, std::vector<ClassifiedInstance>> by_pmid;
  for (const ClassifiedInstance &c : classified) {
    by_pmid[c.instance().pmid].push_back(c);
  }
  NeutralizeCorpusResult result;
  for (const Abstract &abstract : abstracts) {
    auto it = by_pmid.find(abstract.pmid);
    if (it == by_pmid.end()) {
      result.abstracts.push_back(abstract);
      continue;
    }
    NeutralizeResult r = NeutralizeAbstract(abstract, it->second, options);
    Abstract out = abstract;
    out.text = std::move(r.text);
    result.abstracts.push_back(std::move(out));
    result.edits.insert(result.edits.end(), r.edits.begin(), r.edits.end());
  }
  return result;
}

}  // namespace neutrapipe
