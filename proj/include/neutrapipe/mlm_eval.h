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

#ifndef NEUTRAPIPE_MLM_EVAL_H_
#define NEUTRAPIPE_MLM_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "neutrapipe/corpus.h"
#include "neutrapipe/lexicon.h"
#include "neutrapipe/neutralizer.h"

namespace neutrapipe {

inline constexpr std::string_view kMaskToken = "[MASK]";

// Sentence spans (scalar offsets, leading whitespace excluded). A boundary is
// '.', '?' or '!' followed by whitespace, except after common abbreviations
// ("Dr.", "vs.", "e.g.", ...) and single-letter initials.
std::vector<Span> SplitSentences(std::u32string_view text);
std::vector<std::string> SplitSentences(std::string_view text);

struct CandidateSet {
  std::string masculine;
  std::string feminine;
  std::string inclusive;

  std::vector<std::string> AsList() const {
    return {masculine, feminine, inclusive};
  }
  bool operator==(const CandidateSet &) const = default;
};

// Role-matched (masculine, feminine, inclusive) triple.
CandidateSet CandidatesForRole(PronounRole role);

struct MaskTestCase {
  std::string case_id;
  std::string pmid;
  std::string sentence;
  std::string original_pronoun;
  PronounRole role = PronounRole::kSubject;
  std::string occupational_term;
  CandidateSet candidates;

  bool operator==(const MaskTestCase &) const = default;
};

void to_json(nlohmann::ordered_json &j, const MaskTestCase &c);
void from_json(const nlohmann::ordered_json &j, MaskTestCase &c);

using TermCount = std::pair<std::string, size_t>;

// Counts lexicon terms inside edit antecedents; top k by count, ties broken
// alphabetically.
std::vector<TermCount> TopTerms(const std::vector<EditRecord> &edits,
                                const Lexicon &occupations, size_t k);

struct MaskBuildResult {
  std::vector<MaskTestCase> cases;
  // Terms that had fewer than n_per_term usable instances.
  std::vector<TermCount> shortfalls;
};

// Samples up to n_per_term Occupation instances per term (an instance counts
// for the first term its antecedent contains), masks the pronoun in its
// sentence and attaches role-matched candidates. Sampling is a seeded
// partial Fisher-Yates over instances sorted by id.
MaskBuildResult BuildMaskTests(
    const std::vector<ClassifiedInstance> &classified,
    const std::map<std::string, Abstract> &abstracts,
    const std::vector<std::string> &terms, size_t n_per_term, uint64_t seed);

// Scores for the candidates of one case. Throws on failure; failed cases are
// left out of every denominator.
class MaskScorer {
 public:
  virtual ~MaskScorer() = default;
  virtual std::map<std::string, double> Score(const MaskTestCase &c) = 0;
};

// Offline scorer from a JSONL script of {case_id, choice}: the chosen
// candidate scores 1, the others 0.
class ScriptedScorer : public MaskScorer {
 public:
  explicit ScriptedScorer(std::map<std::string, std::string> choices)
      : choices_(std::move(choices)) {}
  static ScriptedScorer FromFile(const std::string &path);
  static ScriptedScorer FromStream(std::istream &in);

  std::map<std::string, double> Score(const MaskTestCase &c) override;

 private:
  std::map<std::string, std::string> choices_;
};

// POSTs {case_id, sentence, mask_token, candidates} to <base>/score.
class HttpScorer : public MaskScorer {
 public:
  explicit HttpScorer(std::string url, int timeout_seconds = 60);
  std::map<std::string, double> Score(const MaskTestCase &c) override;

 private:
  std::string base_url_;
  std::string path_;
  int timeout_seconds_;
};

class FunctionScorer : public MaskScorer {
 public:
  using Fn = std::function<std::map<std::string, double>(const MaskTestCase &)>;
  explicit FunctionScorer(Fn fn) : fn_(std::move(fn)) {}
  std::map<std::string, double> Score(const MaskTestCase &c) override {
    return fn_(c);
  }

 private:
  Fn fn_;
};

nlohmann::ordered_json ScoreRequest(const MaskTestCase &c);

// Validates a /score response for `c`: echoed case_id, one finite score
// per candidate. Throws ArgumentError.
std::map<std::string, double> ParseScoreResponse(
    const nlohmann::ordered_json &response, const MaskTestCase &c);

struct TermResult {
  std::string term;
  size_t frequency = 0;
  size_t n_cases = 0;
  size_t inclusive = 0;
  double accuracy = 0;  // percent
};

struct EvalReport {
  std::string model_name;
  size_t n_cases = 0;  // scored cases
  size_t n_unscored = 0;
  size_t n_ties = 0;
  size_t inclusive_count = 0;
  // 100 * inclusive_count / n_cases.
  double inclusive_rate = 0;
  // Unweighted mean of the per-term percentages.
  double per_term_overall = 0;
  std::vector<TermResult> per_term;
  // Every case id submitted (scored or not), sorted.
  std::vector<std::string> case_ids;
};

void to_json(nlohmann::ordered_json &j, const EvalReport &r);
void from_json(const nlohmann::ordered_json &j, EvalReport &r);

// Argmax per case with ties resolved masculine, feminine, inclusive.
EvalReport RunMaskingEval(const std::vector<MaskTestCase> &cases,
                          MaskScorer &scorer, const std::string &model_name,
                          const std::map<std::string, size_t> &frequencies = {});

struct ComparisonRow {
  std::string model_name;
  double inclusive_rate = 0;
  size_t n_cases = 0;
};

// Rows sorted by inclusive rate, highest first. Throws ArgumentError when the
// reports were run over different case sets.
std::vector<ComparisonRow> CompareModels(const std::vector<EvalReport> &reports);

std::string FormatComparison(const std::vector<ComparisonRow> &rows);
std::string FormatReport(const EvalReport &report);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_MLM_EVAL_H_
