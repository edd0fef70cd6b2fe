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

#include "neutrapipe/metrics.h"

#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "neutrapipe/errors.h"
#include "neutrapipe/log.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

namespace {

size_t Index(AntecedentLabel label) { return static_cast<size_t>(label); }

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

AgreementResult CohenKappa(std::span<const AntecedentLabel> a,
                           std::span<const AntecedentLabel> b) {
  if (a.size() != b.size()) {
    throw ArgumentError("label sequences differ in length");
  }
  if (a.empty()) throw ArgumentError("empty label sequences");

  std::array<size_t, kNumLabels> count_a{};
  std::array<size_t, kNumLabels> count_b{};
  size_t agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ++count_a[Index(a[i])];
    ++count_b[Index(b[i])];
    if (a[i] == b[i]) ++agree;
  }
  const double n = static_cast<double>(a.size());
  AgreementResult result;
  result.n = a.size();
  result.observed_agreement = agree / n;
  for (int k = 0; k < kNumLabels; ++k) {
    result.expected_agreement += (count_a[k] / n) * (count_b[k] / n);
  }
  if (result.expected_agreement >= 1.0) {
    Warn("kappa undefined for a single shared label; reporting 1.0");
    result.expected_agreement = 1.0;
    result.kappa = 1.0;
    return result;
  }
  result.kappa = (result.observed_agreement - result.expected_agreement) /
                 (1.0 - result.expected_agreement);
  return result;
}

AgreementResult CohenKappa(const LabelSequencePair &pair) {
  if (pair.ids.size() != pair.labels_a.size()) {
    throw ArgumentError("ids and labels differ in length");
  }
  return CohenKappa(pair.labels_a, pair.labels_b);
}

LabelSequencePair AlignAnnotations(const std::vector<ClassifiedInstance> &a,
                                   const std::vector<ClassifiedInstance> &b) {
  std::map<std::string, AntecedentLabel> by_id;
  for (const ClassifiedInstance &c : b) {
    if (!by_id.emplace(c.instance().instance_id, c.label).second) {
      throw ArgumentError("duplicate instance " + c.instance().instance_id);
    }
  }
  if (a.size() != b.size()) {
    throw ArgumentError("annotation sets cover different instances");
  }
  LabelSequencePair pair;
  std::set<std::string> seen;
  for (const ClassifiedInstance &c : a) {
    if (!seen.insert(c.instance().instance_id).second) {
      throw ArgumentError("duplicate instance " + c.instance().instance_id);
    }
    auto it = by_id.find(c.instance().instance_id);
    if (it == by_id.end()) {
      throw ArgumentError("instance " + c.instance().instance_id +
                          " missing from second annotation set");
    }
    pair.ids.push_back(c.instance().instance_id);
    pair.labels_a.push_back(c.label);
    pair.labels_b.push_back(it->second);
  }
  return pair;
}

ClassMetrics FromCounts(AntecedentLabel label, size_t tp, size_t fp,
                        size_t fn) {
  ClassMetrics m;
  m.label = label;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.support = tp + fn;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  m.f1 = m.precision + m.recall == 0
             ? 0.0
             : 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

MetricsReport WeightedAverage(std::vector<ClassMetrics> per_class) {
  MetricsReport report;
  report.per_class = std::move(per_class);
  double total = 0;
  for (const ClassMetrics &m : report.per_class) {
    double w = static_cast<double>(m.support);
    total += w;
    report.weighted_precision += w * m.precision;
    report.weighted_recall += w * m.recall;
    report.weighted_f1 += w * m.f1;
  }
  if (total > 0) {
    report.weighted_precision /= total;
    report.weighted_recall /= total;
    report.weighted_f1 /= total;
  }
  return report;
}

MetricsReport ClassificationMetrics(std::span<const AntecedentLabel> predicted,
                                    std::span<const AntecedentLabel> gold) {
  if (predicted.size() != gold.size()) {
    throw ArgumentError("predicted and gold differ in length");
  }
  std::array<size_t, kNumLabels> tp{}, fp{}, fn{};
  for (size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] == gold[i]) {
      ++tp[Index(gold[i])];
    } else {
      ++fp[Index(predicted[i])];
      ++fn[Index(gold[i])];
    }
  }
  std::vector<ClassMetrics> rows;
  for (AntecedentLabel label : AllLabels()) {
    size_t k = Index(label);
    rows.push_back(FromCounts(label, tp[k], fp[k], fn[k]));
  }
  return WeightedAverage(std::move(rows));
}

std::string NormalizeAntecedent(std::string_view text) {
  std::u32string lower = Lowercase(DecodeUtf8(text));
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : lower) {
    if (IsSpace(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  size_t first = 0;
  if (words.size() > 1 &&
      (words[0] == U"the" || words[0] == U"a" || words[0] == U"an")) {
    first = 1;
  }
  std::u32string out;
  for (size_t i = first; i < words.size(); ++i) {
    if (!out.empty()) out.push_back(U' ');
    out += words[i];
  }
  return EncodeUtf8(out);
}

double ResolutionAccuracy(const std::vector<std::string> &predicted,
                          const std::vector<std::string> &gold,
                          bool normalize) {
  if (predicted.size() != gold.size()) {
    throw ArgumentError("predicted and gold differ in length");
  }
  if (gold.empty()) return 0.0;
  size_t hits = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    bool match = normalize ? NormalizeAntecedent(predicted[i]) ==
                                 NormalizeAntecedent(gold[i])
                           : predicted[i] == gold[i];
    if (match) ++hits;
  }
  return Ratio(hits, gold.size());
}

RecallResult LexiconRecall(const std::vector<ClassifiedInstance> &gold,
                           const Lexicon &lexicon) {
  RecallResult result;
  for (const ClassifiedInstance &c : gold) {
    if (c.label != AntecedentLabel::kOccupation) continue;
    ++result.relevant;
    if (ContainsOccupationalTerm(c.resolved.antecedent_text, lexicon)) {
      ++result.retrieved;
    }
  }
  result.recall =
      result.relevant == 0 ? 1.0 : Ratio(result.retrieved, result.relevant);
  return result;
}

nlohmann::ordered_json ToJson(const AgreementResult &result) {
  return {{"kappa", result.kappa},
          {"observed_agreement", result.observed_agreement},
          {"expected_agreement", result.expected_agreement},
          {"n", result.n}};
}

nlohmann::ordered_json ToJson(const MetricsReport &report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ClassMetrics &m : report.per_class) {
    rows.push_back({{"label", LabelName(m.label)},
                    {"support", m.support},
                    {"tp", m.tp},
                    {"fp", m.fp},
                    {"fn", m.fn},
                    {"precision", m.precision},
                    {"recall", m.recall},
                    {"f1", m.f1}});
  }
  return {{"per_class", rows},
          {"weighted_precision", report.weighted_precision},
          {"weighted_recall", report.weighted_recall},
          {"weighted_f1", report.weighted_f1}};
}

std::string FormatTable(const MetricsReport &report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-18s %8s %10s %10s %10s\n", "label",
                "support", "precision", "recall", "f1");
  out << line;
  for (const ClassMetrics &m : report.per_class) {
    std::snprintf(line, sizeof(line), "%-18s %8zu %10.4f %10.4f %10.4f\n",
                  std::string(LabelName(m.label)).c_str(), m.support,
                  m.precision, m.recall, m.f1);
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-18s %8s %10.4f %10.4f %10.4f\n",
                "weighted avg", "", report.weighted_precision,
                report.weighted_recall, report.weighted_f1);
  out << line;
  return out.str();
}

}  // namespace neutrapipe
