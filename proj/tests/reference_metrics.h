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

#ifndef NEUTRAPIPE_TESTS_REFERENCE_METRICS_H_
#define NEUTRAPIPE_TESTS_REFERENCE_METRICS_H_

#include <vector>

#include "neutrapipe/metrics.h"

namespace neutrapipe::testing {

// Reference per-class classification results over 250 instances: label,
// support, precision, recall, f1.
struct ReferenceRow {
  AntecedentLabel label;
  size_t support;
  double precision;
  double recall;
  double f1;
};

inline std::vector<ReferenceRow> ReferenceClassificationRows() {
  using L = AntecedentLabel;
  return {
      {L::kOccupation, 97, 0.9895, 0.9691, 0.9792},
      {L::kNamedIndividual, 62, 0.9492, 0.9032, 0.9252},
      {L::kAuthorOfAbstract, 56, 1.0, 0.9107, 0.9533},
      {L::kPatientTrialParticipant, 28, 0.7027, 0.9286, 0.8},
      {L::kOther, 7, 0.75, 0.8571, 0.8},
  };
}

inline constexpr double kReferenceWeightedPrecision = 0.943;
inline constexpr double kReferenceWeightedRecall = 0.932;
inline constexpr double kReferenceWeightedF1 = 0.9349;

// One confusion matrix consistent with every reference row (found by hand from
// the counts tp = round(recall * support), fp = round(tp / precision) - tp).
// Each cell is (gold, predicted, count).
struct Cell {
  AntecedentLabel gold;
  AntecedentLabel predicted;
  size_t count;
};

inline std::vector<Cell> ReconstructedConfusion() {
  using L = AntecedentLabel;
  return {
      {L::kOccupation, L::kOccupation, 94},
      {L::kOccupation, L::kPatientTrialParticipant, 3},
      {L::kNamedIndividual, L::kNamedIndividual, 56},
      {L::kNamedIndividual, L::kPatientTrialParticipant, 6},
      {L::kAuthorOfAbstract, L::kAuthorOfAbstract, 51},
      {L::kAuthorOfAbstract, L::kNamedIndividual, 3},
      {L::kAuthorOfAbstract, L::kPatientTrialParticipant, 2},
      {L::kPatientTrialParticipant, L::kPatientTrialParticipant, 26},
      {L::kPatientTrialParticipant, L::kOther, 2},
      {L::kOther, L::kOther, 6},
      {L::kOther, L::kOccupation, 1},
  };
}

inline void ExpandConfusion(std::vector<AntecedentLabel> *predicted,
                            std::vector<AntecedentLabel> *gold) {
  for (const Cell &c : ReconstructedConfusion()) {
    for (size_t i = 0; i < c.count; ++i) {
      gold->push_back(c.gold);
      predicted->push_back(c.predicted);
    }
  }
}

}  // namespace neutrapipe::testing

#endif  // NEUTRAPIPE_TESTS_REFERENCE_METRICS_H_
