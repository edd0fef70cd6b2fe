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

#include "neutrapipe/oracle.h"

#include <cstdlib>
#include <exception>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "neutrapipe/errors.h"
#include "neutrapipe/log.h"
#include "neutrapipe/unicode.h"

namespace neutrapipe {

using nlohmann::ordered_json;

namespace {

std::optional<QueryKind> ParseQueryKind(std::string_view name) {
  if (name == "resolution") return QueryKind::kResolution;
  if (name == "classification") return QueryKind::kClassification;
  throw ConfigError("unknown query kind '" + std::string(name) + "'");
}

size_t CountTokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  size_t n = 0;
  std::string word;
  while (in >> word) ++n;
  return n;
}

}  // namespace

MockBackend MockBackend::FromScript(std::istream &in) {
  std::vector<Rule> rules;
  std::vector<RecordError> errors;
  internal::ForEachJsonLine(
      in,
      [&](const ordered_json &j) {
        Rule rule;
        if (j.contains("query")) {
          rule.query = ParseQueryKind(j.at("query").get<std::string>());
        }
        if (j.contains("contains")) {
          rule.contains = j.at("contains").get<std::string>();
        }
        rule.reply = j.at("reply").get<std::string>();
        rules.push_back(std::move(rule));
      },
      &errors);
  if (!errors.empty()) {
    throw ConfigError("mock script line " + std::to_string(errors[0].line) +
                      ": " + errors[0].message);
  }
  return MockBackend(std::move(rules));
}

MockBackend MockBackend::FromScriptFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mock script: " + path);
  return FromScript(in);
}

std::string MockBackend::Complete(const PromptPair &prompt) {
  std::optional<QueryKind> kind = DetectQueryKind(prompt);
  for (const Rule &rule : rules_) {
    if (rule.query && rule.query != kind) continue;
    if (prompt.user_content.find(rule.contains) == std::string::npos) continue;
    return rule.reply;
  }
  return kind == QueryKind::kClassification ? "other" : "";
}

std::vector<TranscriptEntry> ReadTranscript(std::istream &in) {
  std::vector<TranscriptEntry> entries;
  std::vector<RecordError> errors;
  internal::ForEachJsonLine(
      in,
      [&](const ordered_json &j) {
        entries.push_back({j.at("prompt_hash").get<std::string>(),
                           j.at("reply").get<std::string>()});
      },
      &errors);
  if (!errors.empty()) {
    throw ConfigError("transcript line " + std::to_string(errors[0].line) +
                      ": " + errors[0].message);
  }
  return entries;
}

ReplayBackend::ReplayBackend(const std::vector<TranscriptEntry> &entries) {
  for (const TranscriptEntry &e : entries) replies_[e.prompt_hash] = e.reply;
}

ReplayBackend ReplayBackend::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open transcript: " + path);
  return ReplayBackend(ReadTranscript(in));
}

std::string ReplayBackend::Complete(const PromptPair &prompt) {
  auto it = replies_.find(PromptHash(prompt));
  if (it == replies_.end()) {
    throw OracleError("prompt not found in transcript");
  }
  return it->second;
}

std::pair<std::string, std::string> SplitUrl(const std::string &url) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) {
    throw ConfigError("bad endpoint URL '" + url + "'");
  }
  std::string path = m[2].matched ? m[2].str() : "/";
  return {m[1].str(), path};
}

RemoteBackend::RemoteBackend(std::string endpoint, std::string model_name,
                             std::chrono::milliseconds timeout,
                             std::optional<std::string> api_key)
    : model_name_(std::move(model_name)),
      timeout_(timeout),
      api_key_(std::move(api_key)) {
  std::tie(base_url_, path_) = SplitUrl(endpoint);
}

std::string RemoteBackend::Complete(const PromptPair &prompt) {
  httplib::Client client(base_url_);
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      timeout_ - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (api_key_) headers.emplace("Authorization", "Bearer " + *api_key_);

  ordered_json body = {
      {"model", model_name_},
      {"messages",
       {{{"role", "system"}, {"content", prompt.system_content}},
        {{"role", "user"}, {"content", prompt.user_content}}}}};
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("server returned HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw OracleError("server returned HTTP " + std::to_string(res->status));
  }
  try {
    ordered_json reply = ordered_json::parse(res->body);
    if (reply.contains("choices")) {
      return reply.at("choices").at(0).at("message").at("content")
          .get<std::string>();
    }
    return reply.at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception &e) {
    throw OracleError(std::string("malformed chat-completion response: ") +
                      e.what());
  }
}

BackendKind ParseBackendKind(std::string_view name) {
  if (name == "remote") return BackendKind::kRemote;
  if (name == "mock") return BackendKind::kMock;
  if (name == "replay") return BackendKind::kReplay;
  throw ConfigError("unknown backend '" + std::string(name) + "'");
}

void OracleBackendConfig::Validate() const {
  if (kind == BackendKind::kRemote && (!endpoint || !model_name)) {
    throw ConfigError("remote backend requires endpoint and model_name");
  }
  if (kind == BackendKind::kReplay && !transcript) {
    throw ConfigError("replay backend requires a transcript file");
  }
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (requests_per_minute <= 0) {
    throw ConfigError("requests_per_minute must be positive");
  }
}

std::unique_ptr<OracleBackend> MakeBackend(const OracleBackendConfig &config) {
  config.Validate();
  switch (config.kind) {
    case BackendKind::kMock:
      if (config.mock_script) {
        return std::make_unique<MockBackend>(
            MockBackend::FromScriptFile(*config.mock_script));
      }
      return std::make_unique<MockBackend>();
    case BackendKind::kReplay:
      return std::make_unique<ReplayBackend>(
          ReplayBackend::FromFile(*config.transcript));
    case BackendKind::kRemote: {
      std::optional<std::string> key;
      if (const char *value = std::getenv(config.api_key_env.c_str())) {
        key = value;
      }
      return std::make_unique<RemoteBackend>(*config.endpoint,
                                             *config.model_name,
                                             config.timeout, key);
    }
  }
  throw ConfigError("unsupported backend");
}

ReplyCache::ReplyCache(const std::string &path) {
  {
    std::ifstream in(path);
    if (in) {
      for (TranscriptEntry &e : ReadTranscript(in)) {
        replies_[e.prompt_hash] = std::move(e.reply);
      }
    }
  }
  out_.open(path, std::ios::app);
  if (!out_) throw ConfigError("cannot open cache file: " + path);
}

std::optional<std::string> ReplyCache::Get(const std::string &hash) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = replies_.find(hash);
  if (it == replies_.end()) return std::nullopt;
  return it->second;
}

void ReplyCache::Put(const std::string &hash, const std::string &reply) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!replies_.emplace(hash, reply).second) return;
  if (out_.is_open()) {
    ordered_json j = {{"prompt_hash", hash}, {"reply", reply}};
    out_ << j.dump() << '\n';
    out_.flush();
  }
}

size_t ReplyCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return replies_.size();
}

namespace {

std::chrono::steady_clock::duration IntervalFor(int requests_per_minute) {
  if (requests_per_minute <= 0) {
    throw ConfigError("requests_per_minute must be positive");
  }
  return std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::minutes(1)) /
         requests_per_minute;
}

}  // namespace

RateLimiter::RateLimiter(int requests_per_minute)
    : interval_(IntervalFor(requests_per_minute)),
      next_(std::chrono::steady_clock::now()) {}

void RateLimiter::Acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    slot = std::max(next_, std::chrono::steady_clock::now());
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

OracleClient::OracleClient(OracleBackend *backend, OracleClientOptions options,
                           std::string background_text, std::string rules_text,
                           ReplyCache *cache)
    : backend_(backend),
      options_(options),
      background_(std::move(background_text)),
      rules_(std::move(rules_text)),
      cache_(cache != nullptr ? cache : &own_cache_) {
  if (options_.requests_per_minute > 0 && backend_->remote()) {
    limiter_ = std::make_unique<RateLimiter>(options_.requests_per_minute);
  }
}

std::string OracleClient::Ask(const PromptPair &prompt) {
  const std::string hash = PromptHash(prompt);
  if (std::optional<std::string> hit = cache_->Get(hash)) {
    ++cache_hits_;
    return *hit;
  }
  for (int attempt = 0;; ++attempt) {
    if (limiter_) limiter_->Acquire();
    try {
      ++backend_calls_;
      std::string reply = backend_->Complete(prompt);
      cache_->Put(hash, reply);
      return reply;
    } catch (const TransportError &e) {
      if (attempt >= options_.max_retries) throw;
      Warn(std::string("transport error, retrying: ") + e.what());
      std::this_thread::sleep_for(options_.backoff_base * (1 << attempt));
    }
  }
}

std::optional<Span> FindAntecedentSpan(std::u32string_view text,
                                       std::u32string_view antecedent,
                                       size_t pronoun_offset) {
  (void)pronoun_offset;
  if (antecedent.empty()) return std::nullopt;
  // The earliest occurrence is also the earliest one preceding the pronoun
  // whenever any such occurrence exists.
  size_t first = text.find(antecedent);
  if (first == std::u32string_view::npos) return std::nullopt;
  return Span{first, first + antecedent.size()};
}

Outcome<ResolvedInstance> OracleClient::ResolveAntecedent(
    const PronounInstance &instance, const Abstract &abstract) {
  PromptPair prompt = BuildResolutionPrompt(instance, abstract, background_);
  std::string reply;
  try {
    reply = Ask(prompt);
  } catch (const TransportError &e) {
    return InstanceFailure{instance.instance_id, "resolve",
                           std::string("transport failure: ") + e.what(),
                           std::nullopt};
  } catch (const OracleError &e) {
    return InstanceFailure{instance.instance_id, "resolve",
                           std::string("oracle failure: ") + e.what(),
                           std::nullopt};
  }
  std::string antecedent = CleanResolutionReply(reply);
  if (antecedent.empty()) {
    return InstanceFailure{instance.instance_id, "resolve", "empty reply",
                           reply};
  }
  ResolvedInstance resolved;
  resolved.instance = instance;
  resolved.antecedent_text = antecedent;
  resolved.antecedent_span = FindAntecedentSpan(
      DecodeUtf8(abstract.text), DecodeUtf8(antecedent), instance.offset);
  if (CountTokens(antecedent) > options_.suspicious_tokens) {
    resolved.suspicious = true;
    Warn("suspiciously long antecedent for " + instance.instance_id);
  }
  return resolved;
}

Outcome<ClassifiedInstance> OracleClient::ClassifyAntecedent(
    const ResolvedInstance &resolved, const Abstract &abstract) {
  const std::string &id = resolved.instance.instance_id;
  PromptPair prompt = BuildClassificationPrompt(resolved, abstract, rules_);
  std::string reply;
  try {
    reply = Ask(prompt);
  } catch (const TransportError &e) {
    return InstanceFailure{id, "classify",
                           std::string("transport failure: ") + e.what(),
                           std::nullopt};
  } catch (const OracleError &e) {
    return InstanceFailure{id, "classify",
                           std::string("oracle failure: ") + e.what(),
                           std::nullopt};
  }
  std::optional<AntecedentLabel> label = ParseLabelReply(reply);
  if (!label) {
    return InstanceFailure{id, "classify", "unrecognized label", reply};
  }
  ClassifiedInstance classified;
  classified.resolved = resolved;
  classified.label = *label;
  classified.label_source = LabelSource::kOracle;
  return classified;
}

void ParallelFor(size_t n, int workers,
                 const std::function<void(size_t)> &fn) {
  size_t threads = std::min<size_t>(n, std::max(1, workers));
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

template <typename T, typename Input, typename Fn>
void RunBatch(const std::vector<Input> &inputs, int workers,
              const std::map<std::string, Abstract> &abstracts,
              const std::string &stage, Fn &&call, std::vector<T> *ok,
              std::vector<InstanceFailure> *failures,
              const std::function<const PronounInstance &(const Input &)>
                  &instance_of) {
  std::vector<std::optional<Outcome<T>>> results(inputs.size());
  ParallelFor(inputs.size(), workers, [&](size_t i) {
    const PronounInstance &p = instance_of(inputs[i]);
    auto it = abstracts.find(p.pmid);
    if (it == abstracts.end()) {
      results[i] = InstanceFailure{p.instance_id, stage,
                                   "abstract " + p.pmid + " not found",
                                   std::nullopt};
      return;
    }
    results[i] = call(inputs[i], it->second);
  });
  for (auto &r : results) {
    if (auto *value = std::get_if<T>(&*r)) {
      ok->push_back(std::move(*value));
    } else {
      failures->push_back(std::get<InstanceFailure>(std::move(*r)));
    }
  }
}

}  // namespace

ResolveBatch OracleClient::ResolveAll(
    const std::vector<PronounInstance> &instances,
    const std::map<std::string, Abstract> &abstracts) {
  ResolveBatch batch;
  RunBatch<ResolvedInstance, PronounInstance>(
      instances, options_.workers, abstracts, "resolve",
      [this](const PronounInstance &p, const Abstract &a) {
        return ResolveAntecedent(p, a);
      },
      &batch.resolved, &batch.failures,
      [](const PronounInstance &p) -> const PronounInstance & { return p; });
  return batch;
}

ClassifyBatch OracleClient::ClassifyAll(
    const std::vector<ResolvedInstance> &resolved,
    const std::map<std::string, Abstract> &abstracts) {
  ClassifyBatch batch;
  RunBatch<ClassifiedInstance, ResolvedInstance>(
      resolved, options_.workers, abstracts, "classify",
      [this](const ResolvedInstance &r, const Abstract &a) {
        return ClassifyAntecedent(r, a);
      },
      &batch.classified, &batch.failures,
      [](const ResolvedInstance &r) -> const PronounInstance & {
        return r.instance;
      });
  return batch;
}

}  // namespace neutrapipe
