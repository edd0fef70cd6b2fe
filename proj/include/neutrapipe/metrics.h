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

#ifndef NEUTRAPIPE_METRICS_H_
#define NEUTRAPIPE_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "neutrapipe/corpus.h"
#include "neutrapipe/lexicon.h"

namespace neutrapipe {

// Two annotators' labels for the same instances, aligned by index.
struct LabelSequencePair {
  std::vector<std::string> ids;
  std::vector<AntecedentLabel> labels_a;
  std::vector<AntecedentLabel> labels_b;
};

struct AgreementResult {
  double kappa = 0;
  double observed_agreement = 0;
  double expected_agreement = 0;
  size_t n = 0;
};

// Cohen's kappa over the six labels. Throws ArgumentError on empty or
// mismatched input. When chance agreement is 1 (both annotators used one
// identical label throughout) kappa is reported as 1 with a warning.
AgreementResult CohenKappa(std::span<const AntecedentLabel> a,
                           std::span<const AntecedentLabel> b);
AgreementResult CohenKappa(const LabelSequencePair &pair);

// Aligns two annotation sets by instance_id. Throws ArgumentError unless
// both contain exactly the same ids.
LabelSequencePair AlignAnnotations(const std::vector<ClassifiedInstance> &a,
                                   const std::vector<ClassifiedInstance> &b);

struct ClassMetrics {
  AntecedentLabel label = AntecedentLabel::kOther;
  size_t support = 0;
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  double weighted_precision = 0;
  double weighted_recall = 0;
  double weighted_f1 = 0;
};

// Fills precision/recall/f1 from the counts.
ClassMetrics FromCounts(AntecedentLabel label, size_t tp, size_t fp,
                        size_t fn);

// Support-weighted averages over the given rows. Rows keep their stored
// precision/recall/f1, so reference per-class figures can be averaged directly.
MetricsReport WeightedAverage(std::vector<ClassMetrics> per_class);

// Per-label confusion counts for all six labels (zero-support labels
// included) plus support-weighted averages.
MetricsReport ClassificationMetrics(std::span<const AntecedentLabel> predicted,
                                    std::span<const AntecedentLabel> gold);

// Lowercase, collapse whitespace, drop a leading "the"/"a"/"an".
std::string NormalizeAntecedent(std::string_view text);

// Fraction of positions whose antecedents match, either after
// NormalizeAntecedent or by strict equality.
double ResolutionAccuracy(const std::vector<std::string> &predicted,
                          const std::vector<std::string> &gold,
                          bool normalize = true);

struct RecallResult {
  size_t relevant = 0;
  size_t retrieved = 0;
  double recall = 0;
};

// Recall of ContainsOccupationalTerm against Occupation gold labels. Recall
// is 1 when there are no Occupation instances.
RecallResult LexiconRecall(const std::vector<ClassifiedInstance> &gold,
                           const Lexicon &lexicon);

nlohmann::ordered_json ToJson(const AgreementResult &result);
nlohmann::ordered_json ToJson(const MetricsReport &report);

// Aligned plain-text table, one row per label plus the weighted row.
std::string FormatTable(const MetricsReport &report);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_METRICS_H_
