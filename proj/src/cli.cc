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

#include "neutrapipe/cli.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "neutrapipe/errors.h"
#include "neutrapipe/lexicon.h"
#include "neutrapipe/log.h"
#include "neutrapipe/metrics.h"
#include "neutrapipe/mlm_eval.h"
#include "neutrapipe/pipeline.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

using nlohmann::ordered_json;

namespace {

struct StageCount {
  std::string stage;
  size_t in = 0;
  size_t out = 0;
  size_t errors = 0;
};

struct RunSummary {
  std::string command;
  std::vector<StageCount> stages;
  size_t failures = 0;
  size_t record_errors = 0;

  ordered_json ToJson(int exit_code) const {
    ordered_json s = ordered_json::array();
    for (const StageCount &c : stages) {
      s.push_back({{"stage", c.stage},
                   {"in", c.in},
                   {"out", c.out},
                   {"errors", c.errors}});
    }
    return {{"command", command},
            {"stages", s},
            {"record_errors", record_errors},
            {"failures", failures},
            {"exit_code", exit_code}};
  }
};

// Command-line state shared by all subcommands.
struct Flags {
  std::string pronoun_lexicon;
  std::string occupation_lexicon;
  std::string background;
  std::string rules;
  std::string backend = "mock";
  std::string endpoint;
  std::string model_name;
  std::string mock_script;
  std::string transcript;
  std::string cache;
  std::string api_key_env = "NEUTRAPIPE_API_KEY";
  int max_retries = 3;
  int requests_per_minute = 60;
  int timeout_ms = 30000;
  int backoff_ms = 500;
  std::string year_range;
  uint64_t seed = 0;
  bool no_verb_agreement = false;
  bool gender_guard = false;
  bool strict_match = false;
  int workers = 1;
  size_t max_failures = 0;

  // Per-command paths.
  std::string in;
  std::string out;
  std::string abstracts;
  std::string failures;
  std::string edits;
  std::string work_dir;
  std::string gold;
  std::string pred;
  std::string a;
  std::string b;
  std::string disagreements;
  std::string json_out;
  bool antecedents = false;
  std::string terms;
  std::string terms_out;
  size_t k = 5;
  size_t n_per_term = 10;
  std::string cases;
  std::string scripted;
  std::string scorer_url;
  std::string term_frequencies;
  std::vector<std::string> reports;
};

PipelineConfig MakeConfig(const Flags &f) {
  PipelineConfig config;
  const std::string data = DefaultDataDir();
  config.pronoun_lexicon = f.pronoun_lexicon;
  config.occupation_lexicon = f.occupation_lexicon.empty()
                                  ? data + "/occupations.txt"
                                  : f.occupation_lexicon;
  config.background = f.background.empty()
                          ? data + "/antecedent_background.txt"
                          : f.background;
  config.rules =
      f.rules.empty() ? data + "/classification_rules.txt" : f.rules;
  config.backend.kind = ParseBackendKind(f.backend);
  if (!f.endpoint.empty()) config.backend.endpoint = f.endpoint;
  if (!f.model_name.empty()) config.backend.model_name = f.model_name;
  if (!f.mock_script.empty()) config.backend.mock_script = f.mock_script;
  if (!f.transcript.empty()) config.backend.transcript = f.transcript;
  config.backend.api_key_env = f.api_key_env;
  config.backend.max_retries = f.max_retries;
  config.backend.requests_per_minute = f.requests_per_minute;
  config.backend.timeout = std::chrono::milliseconds(f.timeout_ms);
  config.backend.backoff_base = std::chrono::milliseconds(f.backoff_ms);
  if (!f.cache.empty()) config.cache = f.cache;
  if (!f.year_range.empty()) config.years = ParseYearRange(f.year_range);
  config.seed = f.seed;
  config.verb_agreement = !f.no_verb_agreement;
  config.gender_guard = f.gender_guard;
  config.strict_match = f.strict_match;
  config.workers = f.workers;
  config.max_failures = f.max_failures;
  return config;
}

void RequireFile(const std::string &path, const std::string &what) {
  if (path.empty()) throw ConfigError(what + " path is required");
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError(what + " not found: " + path);
  }
}

// Outputs must never overwrite inputs.
void CheckDistinct(const std::vector<std::string> &inputs,
                   const std::vector<std::string> &outputs) {
  namespace fs = std::filesystem;
  for (const std::string &o : outputs) {
    if (o.empty()) continue;
    for (const std::string &i : inputs) {
      if (i.empty()) continue;
      std::error_code ec;
      if (fs::exists(o) && fs::equivalent(i, o, ec)) {
        throw ConfigError("output " + o + " would overwrite input " + i);
      }
    }
  }
}

template <typename T>
std::vector<T> ReadFile(const std::string &path, const std::string &what,
                        RunSummary *summary, std::ostream &err) {
  RequireFile(path, what);
  std::ifstream in(path);
  ReadResult<T> result = ReadRecords<T>(in);
  for (const RecordError &e : result.errors) {
    err << "warning: " << path << ":" << e.line << ": " << e.message << "\n";
  }
  summary->record_errors += result.errors.size();
  return std::move(result.records);
}

template <typename T>
void WriteFile(const std::string &path, const std::vector<T> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path + " for writing", 0);
  WriteRecords(records, out);
}

void WriteJson(const std::string &path, const ordered_json &j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path + " for writing", 0);
  out << j.dump(2) << "\n";
  if (!out) throw WriteError("failed writing " + path, 0);
}

Lexicon PronounLexicon(const PipelineConfig &config) {
  if (config.pronoun_lexicon.empty()) return DefaultPronounLexicon();
  RequireFile(config.pronoun_lexicon, "pronoun lexicon");
  return LoadLexiconFile(config.pronoun_lexicon, "pronouns");
}

Lexicon OccupationLexicon(const PipelineConfig &config) {
  RequireFile(config.occupation_lexicon, "occupation lexicon");
  return LoadLexiconFile(config.occupation_lexicon, "occupations");
}

// Oracle plumbing for resolve/classify/pipeline.
struct OracleSession {
  std::unique_ptr<OracleBackend> backend;
  std::unique_ptr<ReplyCache> cache;
  std::unique_ptr<OracleClient> client;

  explicit OracleSession(const PipelineConfig &config) {
    config.Validate();
    backend = MakeBackend(config.backend);
    if (config.cache) cache = std::make_unique<ReplyCache>(*config.cache);
    OracleClientOptions options;
    options.max_retries = config.backend.max_retries;
    options.backoff_base = config.backend.backoff_base;
    options.requests_per_minute = config.backend.requests_per_minute;
    options.workers = config.workers;
    client = std::make_unique<OracleClient>(
        backend.get(), options, ReadTextFile(config.background),
        ReadTextFile(config.rules), cache.get());
  }
};

void WriteFailures(const std::string &path,
                   const std::vector<InstanceFailure> &failures) {
  if (!path.empty()) WriteFile(path, failures);
}

NeutralizeOptions NeutralizeOptionsFrom(const PipelineConfig &config) {
  NeutralizeOptions options;
  options.verb_agreement = config.verb_agreement;
  options.gender_guard = config.gender_guard;
  return options;
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int CmdScan(const Flags &f, RunSummary *s, std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in}, {f.out});
  Lexicon pronouns = PronounLexicon(config);
  std::vector<Abstract> abstracts = ReadFile<Abstract>(f.in, "abstracts", s, err);
  std::vector<PronounInstance> instances =
      ScanCorpus(abstracts, pronouns, config.years);
  WriteFile(f.out, instances);
  s->stages.push_back({"scan", abstracts.size(), instances.size(),
                       s->record_errors});
  return kExitOk;
}

int CmdResolve(const Flags &f, RunSummary *s, std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in, f.abstracts}, {f.out, f.failures});
  OracleSession session(config);
  auto abstracts = IndexByPmid(ReadFile<Abstract>(f.abstracts, "abstracts", s, err));
  auto instances = ReadFile<PronounInstance>(f.in, "instances", s, err);
  auto merged = MergeCompounds(instances, abstracts);
  ResolveBatch batch = session.client->ResolveAll(merged, abstracts);
  WriteFile(f.out, batch.resolved);
  WriteFailures(f.failures, batch.failures);
  s->stages.push_back({"resolve", merged.size(), batch.resolved.size(),
                       batch.failures.size()});
  s->failures += batch.failures.size();
  return kExitOk;
}

int CmdClassify(const Flags &f, RunSummary *s, std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in, f.abstracts}, {f.out, f.failures});
  OracleSession session(config);
  auto abstracts = IndexByPmid(ReadFile<Abstract>(f.abstracts, "abstracts", s, err));
  auto resolved = ReadFile<ResolvedInstance>(f.in, "resolved instances", s, err);
  ClassifyBatch batch = session.client->ClassifyAll(resolved, abstracts);
  WriteFile(f.out, batch.classified);
  WriteFailures(f.failures, batch.failures);
  s->stages.push_back({"classify", resolved.size(), batch.classified.size(),
                       batch.failures.size()});
  s->failures += batch.failures.size();
  return kExitOk;
}

int CmdFilterOcc(const Flags &f, RunSummary *s, std::ostream &out,
                 std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in, f.gold}, {f.out});
  Lexicon occupations = OccupationLexicon(config);
  auto resolved = ReadFile<ResolvedInstance>(f.in, "resolved instances", s, err);
  std::vector<ResolvedInstance> kept;
  for (const ResolvedInstance &r : resolved) {
    if (ContainsOccupationalTerm(r.antecedent_text, occupations)) {
      kept.push_back(r);
    }
  }
  WriteFile(f.out, kept);
  s->stages.push_back({"filter-occ", resolved.size(), kept.size(), 0});
  if (!f.gold.empty()) {
    auto gold = ReadFile<ClassifiedInstance>(f.gold, "gold annotations", s, err);
    RecallResult recall = LexiconRecall(gold, occupations);
    out << "lexicon recall: " << recall.retrieved << "/" << recall.relevant
        << " = " << recall.recall << "\n";
  }
  return kExitOk;
}

int CmdNeutralize(const Flags &f, RunSummary *s, std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in, f.abstracts}, {f.out, f.edits});
  auto abstracts = ReadFile<Abstract>(f.abstracts, "abstracts", s, err);
  auto classified = ReadFile<ClassifiedInstance>(f.in, "classified instances", s, err);
  NeutralizeCorpusResult r =
      NeutralizeCorpus(abstracts, classified, NeutralizeOptionsFrom(config));
  WriteFile(f.out, r.abstracts);
  if (!f.edits.empty()) WriteFile(f.edits, r.edits);
  s->stages.push_back({"neutralize", classified.size(), r.edits.size(), 0});
  return kExitOk;
}

int CmdPipeline(const Flags &f, RunSummary *s, std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in}, {f.out, f.edits, f.failures});
  Lexicon pronouns = PronounLexicon(config);
  OracleSession session(config);

  std::vector<Abstract> abstracts = ReadFile<Abstract>(f.in, "abstracts", s, err);
  auto index = IndexByPmid(abstracts);
  auto instances = ScanCorpus(abstracts, pronouns, config.years);
  s->stages.push_back({"scan", abstracts.size(), instances.size(),
                       s->record_errors});

  auto merged = MergeCompounds(instances, index);
  ResolveBatch resolved = session.client->ResolveAll(merged, index);
  s->stages.push_back({"resolve", merged.size(), resolved.resolved.size(),
                       resolved.failures.size()});

  ClassifyBatch classified =
      session.client->ClassifyAll(resolved.resolved, index);
  s->stages.push_back({"classify", resolved.resolved.size(),
                       classified.classified.size(),
                       classified.failures.size()});

  NeutralizeCorpusResult r = NeutralizeCorpus(
      abstracts, classified.classified, NeutralizeOptionsFrom(config));
  s->stages.push_back({"neutralize", classified.classified.size(),
                       r.edits.size(), 0});

  if (!f.work_dir.empty()) {
    std::filesystem::create_directories(f.work_dir);
    WriteFile(f.work_dir + "/instances.jsonl", instances);
    WriteFile(f.work_dir + "/resolved.jsonl", resolved.resolved);
    WriteFile(f.work_dir + "/classified.jsonl", classified.classified);
  }
  WriteFile(f.out, r.abstracts);
  if (!f.edits.empty()) WriteFile(f.edits, r.edits);
  std::vector<InstanceFailure> failures = resolved.failures;
  failures.insert(failures.end(), classified.failures.begin(),
                  classified.failures.end());
  WriteFailures(f.failures, failures);
  s->failures += failures.size();
  return kExitOk;
}

int CmdKappa(const Flags &f, RunSummary *s, std::ostream &out,
             std::ostream &err) {
  auto a = ReadFile<ClassifiedInstance>(f.a, "annotation set A", s, err);
  auto b = ReadFile<ClassifiedInstance>(f.b, "annotation set B", s, err);
  LabelSequencePair pair = AlignAnnotations(a, b);
  AgreementResult result = CohenKappa(pair);
  std::ostringstream text;
  text << std::fixed << std::setprecision(4) << "kappa: " << result.kappa
       << "\n"
       << "observed agreement: " << result.observed_agreement << "\n"
       << "expected agreement: " << result.expected_agreement << "\n"
       << "n: " << result.n << "\n";
  out << text.str();
  if (!f.json_out.empty()) WriteJson(f.json_out, ToJson(result));
  if (!f.disagreements.empty()) {
    std::ofstream d(f.disagreements, std::ios::binary | std::ios::trunc);
    size_t n = 0;
    for (size_t i = 0; i < pair.ids.size(); ++i) {
      if (pair.labels_a[i] == pair.labels_b[i]) continue;
      ordered_json j = {{"instance_id", pair.ids[i]},
                        {"label_a", LabelName(pair.labels_a[i])},
                        {"label_b", LabelName(pair.labels_b[i])}};
      d << j.dump() << "\n";
      ++n;
    }
    if (!d) throw WriteError("failed writing " + f.disagreements, n);
  }
  s->stages.push_back({"kappa", pair.ids.size(), 1, 0});
  return kExitOk;
}

int CmdMetrics(const Flags &f, RunSummary *s, std::ostream &out,
               std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  if (f.antecedents) {
    auto pred = ReadFile<ResolvedInstance>(f.pred, "predicted antecedents", s, err);
    auto gold = ReadFile<ResolvedInstance>(f.gold, "gold antecedents", s, err);
    std::map<std::string, std::string> gold_by_id;
    for (const ResolvedInstance &g : gold) {
      gold_by_id[g.instance.instance_id] = g.antecedent_text;
    }
    if (gold_by_id.size() != pred.size()) {
      throw ArgumentError("predicted and gold cover different instances");
    }
    std::vector<std::string> p, g;
    for (const ResolvedInstance &r : pred) {
      auto it = gold_by_id.find(r.instance.instance_id);
      if (it == gold_by_id.end()) {
        throw ArgumentError("instance " + r.instance.instance_id +
                            " missing from gold");
      }
      p.push_back(r.antecedent_text);
      g.push_back(it->second);
    }
    double accuracy = ResolutionAccuracy(p, g, !config.strict_match);
    out << "resolution accuracy: " << accuracy << " (n=" << p.size()
        << (config.strict_match ? ", strict" : ", normalized") << ")\n";
    if (!f.json_out.empty()) {
      WriteJson(f.json_out, {{"resolution_accuracy", accuracy},
                             {"n", p.size()},
                             {"strict", config.strict_match}});
    }
    s->stages.push_back({"metrics", p.size(), 1, 0});
    return kExitOk;
  }
  auto pred = ReadFile<ClassifiedInstance>(f.pred, "predicted labels", s, err);
  auto gold = ReadFile<ClassifiedInstance>(f.gold, "gold labels", s, err);
  LabelSequencePair pair = AlignAnnotations(pred, gold);
  MetricsReport report = ClassificationMetrics(pair.labels_a, pair.labels_b);
  out << FormatTable(report);
  if (!f.json_out.empty()) WriteJson(f.json_out, ToJson(report));
  s->stages.push_back({"metrics", pair.ids.size(), 1, 0});
  return kExitOk;
}

int CmdBuildTests(const Flags &f, RunSummary *s, std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.in, f.abstracts, f.edits}, {f.out, f.terms_out});
  auto abstracts = IndexByPmid(ReadFile<Abstract>(f.abstracts, "abstracts", s, err));
  auto classified = ReadFile<ClassifiedInstance>(f.in, "classified instances", s, err);
  std::vector<TermCount> terms;
  if (!f.terms.empty()) {
    for (const std::string &t : SplitList(f.terms)) terms.emplace_back(t, 0);
  } else {
    auto edits = ReadFile<EditRecord>(f.edits, "edits", s, err);
    terms = TopTerms(edits, OccupationLexicon(config), f.k);
  }
  if (terms.empty()) throw ConfigError("no occupational terms to test");
  std::vector<std::string> names;
  for (const TermCount &t : terms) names.push_back(t.first);
  MaskBuildResult built =
      BuildMaskTests(classified, abstracts, names, f.n_per_term, config.seed);
  WriteFile(f.out, built.cases);
  if (!f.terms_out.empty()) {
    ordered_json j = ordered_json::array();
    for (const TermCount &t : terms) {
      j.push_back({{"term", t.first}, {"frequency", t.second}});
    }
    WriteJson(f.terms_out, j);
  }
  s->stages.push_back({"build-tests", classified.size(), built.cases.size(),
                       built.shortfalls.size()});
  return kExitOk;
}

int CmdEvalMlm(const Flags &f, RunSummary *s, std::ostream &out,
               std::ostream &err) {
  PipelineConfig config = MakeConfig(f);
  CheckDistinct({f.cases, f.scripted, f.term_frequencies}, {f.out});
  auto cases = ReadFile<MaskTestCase>(f.cases, "mask test cases", s, err);
  std::unique_ptr<MaskScorer> scorer;
  if (!f.scripted.empty()) {
    RequireFile(f.scripted, "scripted scorer");
    scorer = std::make_unique<ScriptedScorer>(ScriptedScorer::FromFile(f.scripted));
  } else if (!f.scorer_url.empty()) {
    scorer = std::make_unique<HttpScorer>(f.scorer_url);
  } else {
    throw ConfigError("eval-mlm needs --scripted or --scorer-url");
  }
  std::map<std::string, size_t> frequencies;
  if (!f.term_frequencies.empty()) {
    RequireFile(f.term_frequencies, "term frequencies");
    ordered_json j = ordered_json::parse(ReadTextFile(f.term_frequencies));
    for (const ordered_json &t : j) {
      frequencies[t.at("term").get<std::string>()] =
          t.at("frequency").get<size_t>();
    }
  }
  EvalReport report = RunMaskingEval(cases, *scorer, f.model_name.empty()
                                                         ? "model"
                                                         : f.model_name,
                                     frequencies);
  out << FormatReport(report);
  if (!f.out.empty()) WriteJson(f.out, report);
  s->stages.push_back({"eval-mlm", cases.size(), report.n_cases,
                       report.n_unscored});
  s->failures += report.n_unscored;
  (void)config;
  return kExitOk;
}

int CmdCompare(const Flags &f, RunSummary *s, std::ostream &out) {
  std::vector<EvalReport> reports;
  for (const std::string &path : f.reports) {
    RequireFile(path, "report");
    reports.push_back(ordered_json::parse(ReadTextFile(path)).get<EvalReport>());
  }
  std::vector<ComparisonRow> rows = CompareModels(reports);
  out << FormatComparison(rows);
  if (!f.out.empty()) {
    ordered_json j = ordered_json::array();
    for (const ComparisonRow &r : rows) {
      j.push_back({{"model_name", r.model_name},
                   {"inclusive_rate", r.inclusive_rate},
                   {"n_cases", r.n_cases}});
    }
    WriteJson(f.out, j);
  }
  s->stages.push_back({"compare", reports.size(), rows.size(), 0});
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  ScopedWarningHandler warnings(
      [&err](const std::string &message) { err << "warning: " << message << "\n"; });

  Flags f;
  CLI::App app{"Occupational pronoun neutralization pipeline", "neutrapipe"};
  app.set_config("--config", "", "key=value configuration file");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--pronoun-lexicon", f.pronoun_lexicon, "Pronoun lexicon file");
  app.add_option("--occupation-lexicon", f.occupation_lexicon,
                 "Occupational lexicon file");
  app.add_option("--background", f.background, "Antecedent background text");
  app.add_option("--rules", f.rules, "Classification rules text");
  app.add_option("--backend", f.backend, "Oracle backend: remote|mock|replay");
  app.add_option("--endpoint", f.endpoint, "Chat-completion endpoint URL");
  app.add_option("--model-name", f.model_name, "Model name");
  app.add_option("--mock-script", f.mock_script, "Mock backend script (JSONL)");
  app.add_option("--transcript", f.transcript, "Replay transcript (JSONL)");
  app.add_option("--cache", f.cache,
                 "Reply cache file; doubles as a replay transcript");
  app.add_option("--api-key-env", f.api_key_env,
                 "Environment variable holding the API key");
  app.add_option("--max-retries", f.max_retries);
  app.add_option("--requests-per-minute", f.requests_per_minute);
  app.add_option("--timeout-ms", f.timeout_ms);
  app.add_option("--backoff-ms", f.backoff_ms);
  app.add_option("--year-range", f.year_range, "Inclusive years, e.g. 1965-1980");
  app.add_option("--seed", f.seed);
  app.add_flag("--no-verb-agreement", f.no_verb_agreement);
  app.add_flag("--gender-guard", f.gender_guard);
  app.add_flag("--strict-match", f.strict_match);
  app.add_option("--workers", f.workers);
  app.add_option("--max-failures", f.max_failures,
                 "Exit 2 when instance failures exceed this");

  auto *scan = app.add_subcommand("scan", "Find gendered pronoun instances");
  scan->add_option("--in", f.in)->required();
  scan->add_option("--out", f.out)->required();

  auto *resolve = app.add_subcommand("resolve", "Resolve pronoun antecedents");
  resolve->add_option("--abstracts", f.abstracts)->required();
  resolve->add_option("--in", f.in)->required();
  resolve->add_option("--out", f.out)->required();
  resolve->add_option("--failures", f.failures);

  auto *classify = app.add_subcommand("classify", "Classify antecedents");
  classify->add_option("--abstracts", f.abstracts)->required();
  classify->add_option("--in", f.in)->required();
  classify->add_option("--out", f.out)->required();
  classify->add_option("--failures", f.failures);

  auto *filter = app.add_subcommand(
      "filter-occ", "Keep resolved instances with occupational antecedents");
  filter->add_option("--in", f.in)->required();
  filter->add_option("--out", f.out)->required();
  filter->add_option("--gold", f.gold, "Gold classified file for recall");

  auto *neutralize = app.add_subcommand("neutralize", "Rewrite abstracts");
  neutralize->add_option("--abstracts", f.abstracts)->required();
  neutralize->add_option("--in", f.in)->required();
  neutralize->add_option("--out", f.out)->required();
  neutralize->add_option("--edits", f.edits);

  auto *kappa = app.add_subcommand("kappa", "Cohen's kappa between annotators");
  kappa->add_option("--a", f.a)->required();
  kappa->add_option("--b", f.b)->required();
  kappa->add_option("--disagreements", f.disagreements);
  kappa->add_option("--json", f.json_out);

  auto *metrics = app.add_subcommand("metrics", "Classification metrics");
  metrics->add_option("--pred", f.pred)->required();
  metrics->add_option("--gold", f.gold)->required();
  metrics->add_option("--json", f.json_out);
  metrics->add_flag("--antecedents", f.antecedents,
                    "Score resolved antecedents instead of labels");

  auto *build = app.add_subcommand("build-tests", "Build masked-pronoun cases");
  build->add_option("--abstracts", f.abstracts)->required();
  build->add_option("--in", f.in)->required();
  build->add_option("--out", f.out)->required();
  build->add_option("--edits", f.edits, "Edits used to rank terms");
  build->add_option("--terms", f.terms, "Comma-separated terms");
  build->add_option("--k", f.k);
  build->add_option("--n-per-term", f.n_per_term);
  build->add_option("--terms-out", f.terms_out);

  auto *eval = app.add_subcommand("eval-mlm", "Score masked-pronoun cases");
  eval->add_option("--cases", f.cases)->required();
  eval->add_option("--scripted", f.scripted);
  eval->add_option("--scorer-url", f.scorer_url);
  eval->add_option("--terms", f.term_frequencies, "Term frequency JSON");
  eval->add_option("--out", f.out);
  eval->add_option("--model-name", f.model_name);

  auto *compare = app.add_subcommand("compare", "Compare evaluation reports");
  compare->add_option("--reports", f.reports)->required();
  compare->add_option("--out", f.out);

  auto *pipeline = app.add_subcommand(
      "pipeline", "scan, resolve, classify and neutralize in one run");
  pipeline->add_option("--in", f.in)->required();
  pipeline->add_option("--out", f.out)->required();
  pipeline->add_option("--edits", f.edits);
  pipeline->add_option("--failures", f.failures);
  pipeline->add_option("--work-dir", f.work_dir,
                       "Also write intermediate stage files here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    std::vector<std::string> rest = app.remaining();
    if (app.get_subcommands().empty() && !rest.empty()) {
      err << "error: unknown subcommand '" << rest.front() << "'\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    err << app.help();
    return kExitFatal;
  }

  RunSummary summary;
  int code = kExitOk;
  try {
    if (*scan) {
      summary.command = "scan";
      code = CmdScan(f, &summary, err);
    } else if (*resolve) {
      summary.command = "resolve";
      code = CmdResolve(f, &summary, err);
    } else if (*classify) {
      summary.command = "classify";
      code = CmdClassify(f, &summary, err);
    } else if (*filter) {
      summary.command = "filter-occ";
      code = CmdFilterOcc(f, &summary, out, err);
    } else if (*neutralize) {
      summary.command = "neutralize";
      code = CmdNeutralize(f, &summary, err);
    } else if (*kappa) {
      summary.command = "kappa";
      code = CmdKappa(f, &summary, out, err);
    } else if (*metrics) {
      summary.command = "metrics";
      code = CmdMetrics(f, &summary, out, err);
    } else if (*build) {
      summary.command = "build-tests";
      code = CmdBuildTests(f, &summary, err);
    } else if (*eval) {
      summary.command = "eval-mlm";
      code = CmdEvalMlm(f, &summary, out, err);
    } else if (*compare) {
      summary.command = "compare";
      code = CmdCompare(f, &summary, out);
    } else if (*pipeline) {
      summary.command = "pipeline";
      code = CmdPipeline(f, &summary, err);
    }
    if (code == kExitOk && summary.failures > f.max_failures) {
      err << "error: " << summary.failures
          << " instance failures exceed the threshold of " << f.max_failures
          << "\n";
      code = kExitTooManyFailures;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    code = kExitFatal;
  }
  err << summary.ToJson(code).dump() << "\n";
  return code;
}

}  // namespace neutrapipe
