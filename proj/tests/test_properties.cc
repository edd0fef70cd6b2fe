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

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "generators.h"
#include "neutrapipe/lexicon.h"
#include "neutrapipe/metrics.h"
#include "neutrapipe/mlm_eval.h"
#include "neutrapipe/neutralizer.h"
#include "neutrapipe/scanner.h"
#include "test_util.h"

namespace neutrapipe {
namespace {

using testing::GeneratedAbstract;
using testing::RandomAbstract;
using testing::WarningCapture;

constexpr int kAbstractTrials = 1000;

std::vector<AntecedentLabel> RandomLabels(std::mt19937_64 &rng, size_t n,
                                          int n_labels = kNumLabels) {
  std::uniform_int_distribution<int> pick(0, n_labels - 1);
  std::vector<AntecedentLabel> out;
  for (size_t i = 0; i < n; ++i) out.push_back(AllLabels()[pick(rng)]);
  return out;
}

int LabelIndex(AntecedentLabel l) {
  return static_cast<int>(std::find(AllLabels().begin(), AllLabels().end(),
                                    l) -
                          AllLabels().begin());
}

// Kappa from the integer confusion matrix:
// (n * trace - sum(row_k * col_k)) / (n^2 - sum(row_k * col_k)).
std::optional<long double> OracleKappa(const std::vector<AntecedentLabel> &a,
                                       const std::vector<AntecedentLabel> &b) {
  std::array<std::array<long long, kNumLabels>, kNumLabels> m{};
  for (size_t i = 0; i < a.size(); ++i) ++m[LabelIndex(a[i])][LabelIndex(b[i])];
  long long n = static_cast<long long>(a.size());
  long long trace = 0, chance = 0;
  for (int k = 0; k < kNumLabels; ++k) {
    trace += m[k][k];
    long long row = 0, col = 0;
    for (int j = 0; j < kNumLabels; ++j) {
      row += m[k][j];
      col += m[j][k];
    }
    chance += row * col;
  }
  if (chance == n * n) return std::nullopt;
  return static_cast<long double>(n * trace - chance) /
         static_cast<long double>(n * n - chance);
}

TEST_SUITE("properties") {

TEST_CASE("kappa matches the confusion-matrix oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> length(1, 50);
  std::uniform_int_distribution<int> classes(1, kNumLabels);
  WarningCapture quiet;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = length(rng);
    int k = classes(rng);
    auto a = RandomLabels(rng, n, k);
    auto b = RandomLabels(rng, n, k);
    if (trial % 5 == 0) b = a;
    AgreementResult r = CohenKappa(a, b);
    std::optional<long double> oracle = OracleKappa(a, b);
    if (!oracle) {
      CHECK(r.kappa == 1.0);
      continue;
    }
    ++checked;
    CHECK(std::fabs(r.kappa - static_cast<double>(*oracle)) <= 1e-12);
    CHECK(r.kappa <= 1.0 + 1e-12);
  }
  CHECK(checked > 60);
}

TEST_CASE("kappa is symmetric and order invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = RandomLabels(rng, 40);
    auto b = RandomLabels(rng, 40);
    double k = CohenKappa(a, b).kappa;
    CHECK(std::fabs(CohenKappa(b, a).kappa - k) <= 1e-12);

    std::vector<size_t> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<AntecedentLabel> pa, pb;
    for (size_t i : order) {
      pa.push_back(a[i]);
      pb.push_back(b[i]);
    }
    CHECK(std::fabs(CohenKappa(pa, pb).kappa - k) <= 1e-12);

    std::vector<int> relabel(kNumLabels);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    for (auto &l : pa) l = AllLabels()[relabel[LabelIndex(l)]];
    for (auto &l : pb) l = AllLabels()[relabel[LabelIndex(l)]];
    CHECK(std::fabs(CohenKappa(pa, pb).kappa - k) <= 1e-12);
  }
}

TEST_CASE("confusion counts add up") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng() % 80;
    auto pred = RandomLabels(rng, n);
    auto gold = RandomLabels(rng, n);
    MetricsReport r = ClassificationMetrics(pred, gold);
    size_t tp = 0, fp = 0, fn = 0, support = 0;
    for (const ClassMetrics &c : r.per_class) {
      tp += c.tp;
      fp += c.fp;
      fn += c.fn;
      support += c.support;
      CHECK(c.support == c.tp + c.fn);
    }
    CHECK(tp + fp == n);
    CHECK(tp + fn == n);
    CHECK(support == n);
    for (double v : {r.weighted_precision, r.weighted_recall, r.weighted_f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("weighted equals unweighted mean when supports are equal") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    size_t per = 1 + rng() % 10;
    std::vector<AntecedentLabel> gold;
    for (AntecedentLabel l : AllLabels()) gold.insert(gold.end(), per, l);
    auto pred = RandomLabels(rng, gold.size());
    MetricsReport r = ClassificationMetrics(pred, gold);
    double p = 0, rc = 0, f = 0;
    for (const ClassMetrics &c : r.per_class) {
      p += c.precision;
      rc += c.recall;
      f += c.f1;
    }
    CHECK(std::fabs(r.weighted_precision - p / kNumLabels) <= 1e-12);
    CHECK(std::fabs(r.weighted_recall - rc / kNumLabels) <= 1e-12);
    CHECK(std::fabs(r.weighted_f1 - f / kNumLabels) <= 1e-12);
  }
}

TEST_CASE("scanner finds exactly the placed pronouns") {
  std::mt19937_64 rng(19);
  Lexicon pronouns = DefaultPronounLexicon();
  for (int trial = 0; trial < kAbstractTrials; ++trial) {
    GeneratedAbstract g = RandomAbstract(rng, std::to_string(trial + 1));
    std::vector<PronounInstance> found = ScanAbstract(g.abstract, pronouns);
    REQUIRE(found.size() == g.pronoun_offsets.size());
    for (size_t i = 0; i < found.size(); ++i) {
      CHECK(found[i].offset == g.pronoun_offsets[i]);
      CHECK(found[i].surface == g.pronoun_surfaces[i]);
      CHECK(found[i].lemma == Lowercase(g.pronoun_surfaces[i]));
    }
    CHECK(ScanAbstract(g.abstract, pronouns) == found);
  }
}

TEST_CASE("scanning is additive over corpora") {
  std::mt19937_64 rng(23);
  Lexicon pronouns = DefaultPronounLexicon();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Abstract> a, b;
    for (int i = 0; i < 5; ++i) {
      a.push_back(RandomAbstract(rng, "a" + std::to_string(i)).abstract);
      b.push_back(RandomAbstract(rng, "b" + std::to_string(i)).abstract);
    }
    std::vector<Abstract> both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto sa = ScanCorpus(a, pronouns);
    auto sb = ScanCorpus(b, pronouns);
    auto sab = ScanCorpus(both, pronouns);
    std::vector<PronounInstance> joined = sa;
    joined.insert(joined.end(), sb.begin(), sb.end());
    CHECK(sab == joined);
  }
}

TEST_CASE("adding a lexicon entry never removes matches") {
  std::mt19937_64 rng(29);
  const auto &words = testing::GeneratedFillers();
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    GeneratedAbstract g = RandomAbstract(rng, "1");
    Lexicon base("occ", {{words[pick(rng)], false}, {words[pick(rng)], false}});
    Lexicon more = base.With({words[pick(rng)], rng() % 2 == 0});
    std::vector<TermMatch> small = base.Match(g.abstract.text);
    std::vector<TermMatch> large = more.Match(g.abstract.text);
    for (const TermMatch &m : small) {
      CHECK(std::find(large.begin(), large.end(), m) != large.end());
    }
    std::u32string text = DecodeUtf8(g.abstract.text);
    for (const TermMatch &m : large) {
      CHECK(IsWordBoundaryBefore(text, m.start));
      CHECK(IsWordBoundaryAfter(text, m.end));
    }
  }
}

TEST_CASE("neutralization is reversible, local, selective and idempotent") {
  std::mt19937_64 rng(31);
  Lexicon pronouns = DefaultPronounLexicon();
  size_t total_edits = 0;
  for (int trial = 0; trial < kAbstractTrials; ++trial) {
    GeneratedAbstract g = RandomAbstract(rng, std::to_string(trial + 1));
    auto labeled = testing::LabelRandomly(rng, ScanAbstract(g.abstract, pronouns));
    CAPTURE(g.abstract.text);
    CHECK(testing::NeutralizerViolation(g.abstract, labeled, pronouns,
                                        &total_edits) == "");
  }
  CHECK(total_edits > 500);
}

TEST_CASE("candidates agree with the neutral mapping") {
  for (PronounRole role :
       {PronounRole::kSubject, PronounRole::kObject,
        PronounRole::kPossessiveDeterminer, PronounRole::kPossessivePronoun,
        PronounRole::kReflexive}) {
    CandidateSet c = CandidatesForRole(role);
    CAPTURE(RoleName(role));
    CHECK(MapPronoun(c.masculine, role) == c.inclusive);
    CHECK(MapPronoun(c.feminine, role) == c.inclusive);
    CHECK(GenderOfLemma(c.masculine) == Gender::kMasculine);
    CHECK(GenderOfLemma(c.feminine) == Gender::kFeminine);
  }
}

std::vector<MaskTestCase> RandomCases(std::mt19937_64 &rng, size_t n) {
  static const std::vector<std::string> terms = {"physician", "nurse",
                                                 "surgeon", "dentist"};
  static const std::vector<PronounRole> roles = {
      PronounRole::kSubject, PronounRole::kObject,
      PronounRole::kPossessiveDeterminer, PronounRole::kPossessivePronoun,
      PronounRole::kReflexive};
  std::vector<MaskTestCase> cases;
  for (size_t i = 0; i < n; ++i) {
    MaskTestCase c;
    c.case_id = "c" + std::to_string(i);
    c.pmid = std::to_string(i);
    c.sentence = "The clinician saw [MASK].";
    c.role = roles[rng() % roles.size()];
    c.candidates = CandidatesForRole(c.role);
    c.original_pronoun = c.candidates.masculine;
    c.occupational_term = terms[rng() % terms.size()];
    cases.push_back(c);
  }
  return cases;
}

TEST_CASE("argmax outcomes survive monotone score transforms") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MaskTestCase> cases = RandomCases(rng, 1 + rng() % 40);
    std::map<std::string, std::map<std::string, double>> raw;
    std::uniform_int_distribution<int> level(0, 4);  // small range forces ties
    for (const MaskTestCase &c : cases) {
      for (const std::string &k : c.candidates.AsList()) {
        raw[c.case_id][k] = level(rng) / 4.0;
      }
    }
    auto scorer_for = [&](std::function<double(double)> f) {
      return FunctionScorer([&raw, f](const MaskTestCase &c) {
        std::map<std::string, double> out;
        for (const auto &[k, v] : raw.at(c.case_id)) out[k] = f(v);
        return out;
      });
    };
    FunctionScorer identity = scorer_for([](double v) { return v; });
    FunctionScorer affine = scorer_for([](double v) { return 3 * v + 7; });
    FunctionScorer exp = scorer_for([](double v) { return std::exp(v); });
    EvalReport base = RunMaskingEval(cases, identity, "m");
    for (FunctionScorer *s : {&affine, &exp}) {
      EvalReport other = RunMaskingEval(cases, *s, "m");
      CHECK(other.inclusive_count == base.inclusive_count);
      CHECK(other.n_ties == base.n_ties);
      CHECK(other.per_term_overall == base.per_term_overall);
    }

    size_t per_term_cases = 0, per_term_inclusive = 0;
    for (const TermResult &t : base.per_term) {
      per_term_cases += t.n_cases;
      per_term_inclusive += t.inclusive;
    }
    CHECK(per_term_cases == base.n_cases);
    CHECK(per_term_inclusive == base.inclusive_count);
    CHECK(base.n_cases == cases.size());
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace neutrapipe
