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

#include "neutrapipe/mlm_eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "httplib.h"
#include "neutrapipe/errors.h"
#include "neutrapipe/log.h"
#include "neutrapipe/oracle.h"
#include "neutrapipe/tokenizer.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

using nlohmann::ordered_json;

namespace {

const std::unordered_set<std::u32string> &Abbreviations() {
  static const std::unordered_set<std::u32string> words = {
      U"dr",  U"mr",   U"mrs",  U"ms",  U"prof", U"vs",    U"e.g", U"i.e",
      U"al",  U"fig",  U"figs", U"no",  U"nos",  U"approx", U"cf", U"st",
      U"jr",  U"sr",   U"vol",  U"ca",  U"ref",  U"eq",    U"dept",
  };
  return words;
}

bool IsSentenceEnd(std::u32string_view text, size_t i) {
  char32_t c = text[i];
  if (c != U'.' && c != U'?' && c != U'!') return false;
  if (i + 1 < text.size() && !IsSpace(text[i + 1])) return false;
  if (c != U'.') return true;
  // Word before the period, including internal dots ("e.g").
  size_t begin = i;
  while (begin > 0 && (IsLetter(text[begin - 1]) || text[begin - 1] == U'.')) {
    --begin;
  }
  std::u32string word = Lowercase(text.substr(begin, i - begin));
  if (word.empty()) return true;
  if (Abbreviations().count(word)) return false;
  // Single-letter initial ("J. Smith").
  if (word.size() == 1 && IsUpper(text[begin])) return false;
  return true;
}

// Uniform integer in [0, bound) from raw mt19937_64 output. Rejection keeps
// the result identical across standard library implementations.
uint64_t UniformBelow(std::mt19937_64 &rng, uint64_t bound) {
  uint64_t limit = std::numeric_limits<uint64_t>::max() -
                   std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::string FormatPercent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

}  // namespace

std::vector<Span> SplitSentences(std::u32string_view text) {
  std::vector<Span> spans;
  size_t start = 0;
  auto emit = [&](size_t end) {
    while (start < end && IsSpace(text[start])) ++start;
    size_t stop = end;
    while (stop > start && IsSpace(text[stop - 1])) --stop;
    if (stop > start) spans.push_back({start, stop});
    start = end;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    if (IsSentenceEnd(text, i)) emit(i + 1);
  }
  emit(text.size());
  return spans;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::u32string chars = DecodeUtf8(text);
  std::vector<std::string> out;
  for (const Span &s : SplitSentences(std::u32string_view(chars))) {
    out.push_back(EncodeUtf8(std::u32string_view(chars).substr(s.start,
                                                               s.length())));
  }
  return out;
}

CandidateSet CandidatesForRole(PronounRole role) {
  switch (role) {
    case PronounRole::kSubject: return {"he", "she", "they"};
    case PronounRole::kObject: return {"him", "her", "them"};
    case PronounRole::kPossessiveDeterminer: return {"his", "her", "their"};
    case PronounRole::kPossessivePronoun: return {"his", "hers", "theirs"};
    case PronounRole::kReflexive:
      return {"himself", "herself", "themselves"};
  }
  return {"he", "she", "they"};
}

void to_json(ordered_json &j, const MaskTestCase &c) {
  j = ordered_json::object();
  j["case_id"] = c.case_id;
  j["pmid"] = c.pmid;
  j["sentence"] = c.sentence;
  j["original_pronoun"] = c.original_pronoun;
  j["role"] = RoleName(c.role);
  j["occupational_term"] = c.occupational_term;
  j["candidates"] = {{"masculine", c.candidates.masculine},
                     {"feminine", c.candidates.feminine},
                     {"inclusive", c.candidates.inclusive}};
}

void from_json(const ordered_json &j, MaskTestCase &c) {
  c.case_id = j.at("case_id").get<std::string>();
  c.pmid = j.at("pmid").get<std::string>();
  c.sentence = j.at("sentence").get<std::string>();
  c.original_pronoun = j.at("original_pronoun").get<std::string>();
  c.role = ParseRole(j.at("role").get<std::string>());
  c.occupational_term = j.at("occupational_term").get<std::string>();
  const ordered_json &k = j.at("candidates");
  c.candidates = {k.at("masculine").get<std::string>(),
                  k.at("feminine").get<std::string>(),
                  k.at("inclusive").get<std::string>()};
  if (c.candidates != CandidatesForRole(c.role)) {
    throw ArgumentError("candidates do not match role for case " + c.case_id);
  }
  size_t first = c.sentence.find(kMaskToken);
  if (first == std::string::npos ||
      c.sentence.find(kMaskToken, first + 1) != std::string::npos) {
    throw ArgumentError("case " + c.case_id +
                        " must contain exactly one mask token");
  }
}

std::vector<TermCount> TopTerms(const std::vector<EditRecord> &edits,
                                const Lexicon &occupations, size_t k) {
  std::map<std::string, size_t> counts;
  for (const EditRecord &edit : edits) {
    for (const TermMatch &m : occupations.Match(edit.antecedent_text)) {
      ++counts[m.term];
    }
  }
  std::vector<TermCount> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const TermCount &a, const TermCount &b) {
                     return a.second > b.second;
                   });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

MaskBuildResult BuildMaskTests(
    const std::vector<ClassifiedInstance> &classified,
    const std::map<std::string, Abstract> &abstracts,
    const std::vector<std::string> &terms, size_t n_per_term, uint64_t seed) {
  std::vector<Lexicon> term_lexicons;
  for (const std::string &term : terms) {
    term_lexicons.emplace_back(term, std::vector<LexiconEntry>{{term, false}});
  }
  std::vector<std::vector<const ClassifiedInstance *>> pools(terms.size());
  for (const ClassifiedInstance &c : classified) {
    if (c.label != AntecedentLabel::kOccupation) continue;
    if (!abstracts.count(c.instance().pmid)) continue;
    for (size_t t = 0; t < terms.size(); ++t) {
      if (!term_lexicons[t].Match(c.resolved.antecedent_text).empty()) {
        pools[t].push_back(&c);
        break;
      }
    }
  }

  MaskBuildResult result;
  std::mt19937_64 rng(seed);
  for (size_t t = 0; t < terms.size(); ++t) {
    std::vector<const ClassifiedInstance *> &pool = pools[t];
    std::sort(pool.begin(), pool.end(),
              [](const ClassifiedInstance *a, const ClassifiedInstance *b) {
                return a->instance().instance_id < b->instance().instance_id;
              });
    std::vector<MaskTestCase> built;
    // Partial Fisher-Yates; unusable draws are skipped and replaced.
    for (size_t i = 0; i < pool.size() && built.size() < n_per_term; ++i) {
      size_t j = i + UniformBelow(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      const ClassifiedInstance &c = *pool[i];
      const PronounInstance &p = c.instance();
      const Abstract &abstract = abstracts.at(p.pmid);
      std::u32string text = DecodeUtf8(abstract.text);
      Span span = p.span();
      if (span.end > text.size() ||
          EncodeUtf8(text.substr(span.start, span.length())) != p.surface) {
        throw IntegrityError("instance " + p.instance_id +
                             " does not match abstract text");
      }
      std::optional<Span> sentence;
      for (const Span &s : SplitSentences(std::u32string_view(text))) {
        if (s.start <= span.start && span.end <= s.end) sentence = s;
      }
      if (!sentence) continue;
      std::string before = EncodeUtf8(
          text.substr(sentence->start, span.start - sentence->start));
      std::string after =
          EncodeUtf8(text.substr(span.end, sentence->end - span.end));
      if (before.find(kMaskToken) != std::string::npos ||
          after.find(kMaskToken) != std::string::npos) {
        continue;
      }
      MaskTestCase mc;
      mc.case_id = p.instance_id;
      mc.pmid = p.pmid;
      mc.sentence = before + std::string(kMaskToken) + after;
      mc.original_pronoun = p.lemma;
      mc.role = AssignRole(abstract.text, p);
      mc.occupational_term = terms[t];
      mc.candidates = CandidatesForRole(mc.role);
      built.push_back(std::move(mc));
    }
    std::sort(built.begin(), built.end(),
              [](const MaskTestCase &a, const MaskTestCase &b) {
                return a.case_id < b.case_id;
              });
    if (built.size() < n_per_term) {
      Warn("term '" + terms[t] + "': only " + std::to_string(built.size()) +
           " of " + std::to_string(n_per_term) + " cases available");
      result.shortfalls.emplace_back(terms[t], built.size());
    }
    for (MaskTestCase &mc : built) result.cases.push_back(std::move(mc));
  }
  return result;
}

ScriptedScorer ScriptedScorer::FromStream(std::istream &in) {
  std::map<std::string, std::string> choices;
  std::vector<RecordError> errors;
  internal::ForEachJsonLine(
      in,
      [&](const ordered_json &j) {
        choices[j.at("case_id").get<std::string>()] =
            j.at("choice").get<std::string>();
      },
      &errors);
  if (!errors.empty()) {
    throw ConfigError("scripted scorer line " + std::to_string(errors[0].line) +
                      ": " + errors[0].message);
  }
  return ScriptedScorer(std::move(choices));
}

ScriptedScorer ScriptedScorer::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scorer script: " + path);
  return FromStream(in);
}

std::map<std::string, double> ScriptedScorer::Score(const MaskTestCase &c) {
  auto it = choices_.find(c.case_id);
  if (it == choices_.end()) {
    throw Error("no scripted choice for case " + c.case_id);
  }
  std::map<std::string, double> scores;
  bool found = false;
  for (const std::string &candidate : c.candidates.AsList()) {
    bool chosen = candidate == it->second;
    found = found || chosen;
    scores[candidate] = chosen ? 1.0 : 0.0;
  }
  if (!found) {
    throw Error("scripted choice '" + it->second + "' is not a candidate of " +
                c.case_id);
  }
  return scores;
}

HttpScorer::HttpScorer(std::string url, int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  std::tie(base_url_, path_) = SplitUrl(url);
  if (path_ == "/") path_ = "/score";
}

ordered_json ScoreRequest(const MaskTestCase &c) {
  return {{"case_id", c.case_id},
          {"sentence", c.sentence},
          {"mask_token", kMaskToken},
          {"candidates", c.candidates.AsList()}};
}

std::map<std::string, double> ParseScoreResponse(const ordered_json &response,
                                                 const MaskTestCase &c) {
  if (!response.is_object() || !response.contains("case_id") ||
      response.at("case_id") != c.case_id) {
    throw ArgumentError("response does not echo case_id " + c.case_id);
  }
  if (!response.contains("scores") || !response.at("scores").is_object()) {
    throw ArgumentError("response has no scores object");
  }
  std::map<std::string, double> scores;
  const ordered_json &s = response.at("scores");
  for (const std::string &candidate : c.candidates.AsList()) {
    if (!s.contains(candidate) || !s.at(candidate).is_number()) {
      throw ArgumentError("missing score for '" + candidate + "'");
    }
    double value = s.at(candidate).get<double>();
    if (!std::isfinite(value)) {
      throw ArgumentError("non-finite score for '" + candidate + "'");
    }
    scores[candidate] = value;
  }
  return scores;
}

std::map<std::string, double> HttpScorer::Score(const MaskTestCase &c) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  auto res = client.Post(path_, ScoreRequest(c).dump(), "application/json");
  if (!res) {
    throw TransportError("score request failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("scorer returned HTTP " + std::to_string(res->status));
  }
  return ParseScoreResponse(ordered_json::parse(res->body), c);
}

void to_json(ordered_json &j, const EvalReport &r) {
  ordered_json terms = ordered_json::array();
  for (const TermResult &t : r.per_term) {
    terms.push_back({{"term", t.term},
                     {"frequency", t.frequency},
                     {"n_cases", t.n_cases},
                     {"inclusive", t.inclusive},
                     {"accuracy", t.accuracy}});
  }
  j = {{"model_name", r.model_name},
       {"n_cases", r.n_cases},
       {"n_unscored", r.n_unscored},
       {"n_ties", r.n_ties},
       {"inclusive_count", r.inclusive_count},
       {"inclusive_rate", r.inclusive_rate},
       {"per_term_overall", r.per_term_overall},
       {"per_term", terms},
       {"case_ids", r.case_ids}};
}

void from_json(const ordered_json &j, EvalReport &r) {
  r.model_name = j.at("model_name").get<std::string>();
  r.n_cases = j.at("n_cases").get<size_t>();
  r.n_unscored = j.value("n_unscored", size_t{0});
  r.n_ties = j.value("n_ties", size_t{0});
  r.inclusive_count = j.at("inclusive_count").get<size_t>();
  r.inclusive_rate = j.at("inclusive_rate").get<double>();
  r.per_term_overall = j.value("per_term_overall", 0.0);
  r.per_term.clear();
  for (const ordered_json &t : j.value("per_term", ordered_json::array())) {
    r.per_term.push_back({t.at("term").get<std::string>(),
                          t.at("frequency").get<size_t>(),
                          t.at("n_cases").get<size_t>(),
                          t.at("inclusive").get<size_t>(),
                          t.at("accuracy").get<double>()});
  }
  r.case_ids = j.at("case_ids").get<std::vector<std::string>>();
}

EvalReport RunMaskingEval(const std::vector<MaskTestCase> &cases,
                          MaskScorer &scorer, const std::string &model_name,
                          const std::map<std::string, size_t> &frequencies) {
  EvalReport report;
  report.model_name = model_name;
  std::map<std::string, size_t> term_index;
  for (const MaskTestCase &c : cases) {
    report.case_ids.push_back(c.case_id);
    if (!term_index.count(c.occupational_term)) {
      term_index[c.occupational_term] = report.per_term.size();
      TermResult t;
      t.term = c.occupational_term;
      auto f = frequencies.find(c.occupational_term);
      t.frequency = f == frequencies.end() ? 0 : f->second;
      report.per_term.push_back(t);
    }
  }
  std::sort(report.case_ids.begin(), report.case_ids.end());

  for (const MaskTestCase &c : cases) {
    std::vector<std::string> order = c.candidates.AsList();
    std::map<std::string, double> scores;
    try {
      scores = scorer.Score(c);
      for (const std::string &candidate : order) {
        auto it = scores.find(candidate);
        if (it == scores.end() || !std::isfinite(it->second)) {
          throw ArgumentError("no finite score for '" + candidate + "'");
        }
      }
    } catch (const std::exception &e) {
      Warn("case " + c.case_id + " unscored: " + e.what());
      ++report.n_unscored;
      continue;
    }
    size_t best = 0;
    bool tie = false;
    for (size_t k = 1; k < order.size(); ++k) {
      if (scores[order[k]] > scores[order[best]]) best = k;
    }
    for (size_t k = 0; k < order.size(); ++k) {
      if (k != best && scores[order[k]] == scores[order[best]]) tie = true;
    }
    if (tie) ++report.n_ties;
    ++report.n_cases;
    TermResult &t = report.per_term[term_index[c.occupational_term]];
    ++t.n_cases;
    if (best == 2) {
      ++report.inclusive_count;
      ++t.inclusive;
    }
  }

  if (report.n_cases > 0) {
    report.inclusive_rate =
        100.0 * static_cast<double>(report.inclusive_count) /
        static_cast<double>(report.n_cases);
  }
  double sum = 0;
  size_t terms_scored = 0;
  for (TermResult &t : report.per_term) {
    if (t.n_cases == 0) continue;
    t.accuracy = 100.0 * static_cast<double>(t.inclusive) /
                 static_cast<double>(t.n_cases);
    sum += t.accuracy;
    ++terms_scored;
  }
  if (terms_scored > 0) report.per_term_overall = sum / terms_scored;
  return report;
}

std::vector<ComparisonRow> CompareModels(
    const std::vector<EvalReport> &reports) {
  if (reports.empty()) throw ArgumentError("no reports to compare");
  for (const EvalReport &r : reports) {
    if (r.case_ids != reports.front().case_ids) {
      throw ArgumentError("report '" + r.model_name +
                          "' covers a different case set than '" +
                          reports.front().model_name + "'");
    }
  }
  std::vector<ComparisonRow> rows;
  for (const EvalReport &r : reports) {
    rows.push_back({r.model_name, r.inclusive_rate, r.n_cases});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ComparisonRow &a, const ComparisonRow &b) {
                     return a.inclusive_rate > b.inclusive_rate;
                   });
  return rows;
}

std::string FormatComparison(const std::vector<ComparisonRow> &rows) {
  size_t width = 5;
  for (const ComparisonRow &row : rows) {
    width = std::max(width, row.model_name.size());
  }
  std::ostringstream out;
  out << std::string("model") + std::string(width - 5, ' ')
      << "  inclusive replacement rate (%)\n";
  for (const ComparisonRow &row : rows) {
    out << row.model_name << std::string(width - row.model_name.size(), ' ')
        << "  " << FormatPercent(row.inclusive_rate) << "\n";
  }
  return out.str();
}

std::string FormatReport(const EvalReport &report) {
  std::ostringstream out;
  out << "model: " << report.model_name << "\n";
  out << "scored cases: " << report.n_cases << " (unscored "
      << report.n_unscored << ", ties " << report.n_ties << ")\n";
  out << "inclusive replacement rate (direct): "
      << FormatPercent(report.inclusive_rate) << "%\n";
  out << "inclusive replacement rate (mean of per-term): "
      << FormatPercent(report.per_term_overall) << "%\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %10s %8s %10s\n", "term",
                "frequency", "cases", "percent");
  out << line;
  for (const TermResult &t : report.per_term) {
    std::snprintf(line, sizeof(line), "%-16s %10zu %8zu %10s\n",
                  t.term.c_str(), t.frequency, t.n_cases,
                  FormatPercent(t.accuracy).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace neutrapipe
