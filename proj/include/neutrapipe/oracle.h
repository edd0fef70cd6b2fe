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

#ifndef NEUTRAPIPE_ORACLE_H_
#define NEUTRAPIPE_ORACLE_H_

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "neutrapipe/corpus.h"
#include "neutrapipe/prompts.h"

namespace neutrapipe {

// Something that answers prompts. Implementations throw TransportError for
// retryable faults and OracleError for permanent ones.
class OracleBackend {
 public:
  virtual ~OracleBackend() = default;
  virtual std::string Complete(const PromptPair &prompt) = 0;
  // Local backends are not rate limited.
  virtual bool remote() const { return false; }
};

// Deterministic scripted backend. Each rule optionally restricts the query
// kind and a substring of the user content; the first matching rule's reply
// wins. Unmatched resolution prompts get an empty reply and unmatched
// classification prompts get "other".
class MockBackend : public OracleBackend {
 public:
  struct Rule {
    std::optional<QueryKind> query;
    std::string contains;
    std::string reply;
  };

  MockBackend() = default;
  explicit MockBackend(std::vector<Rule> rules) : rules_(std::move(rules)) {}

  // JSONL of {"query"?: "resolution"|"classification", "contains"?, "reply"}.
  static MockBackend FromScript(std::istream &in);
  static MockBackend FromScriptFile(const std::string &path);

  std::string Complete(const PromptPair &prompt) override;

 private:
  std::vector<Rule> rules_;
};

// One recorded exchange, keyed by PromptHash.
struct TranscriptEntry {
  std::string prompt_hash;
  std::string reply;
};

std::vector<TranscriptEntry> ReadTranscript(std::istream &in);

// Answers only from a recorded transcript. A miss is an OracleError.
class ReplayBackend : public OracleBackend {
 public:
  explicit ReplayBackend(const std::vector<TranscriptEntry> &entries);
  static ReplayBackend FromFile(const std::string &path);

  std::string Complete(const PromptPair &prompt) override;

 private:
  std::unordered_map<std::string, std::string> replies_;
};

// Chat-completion client: POSTs {model, messages:[system, user]} as JSON and
// reads choices[0].message.content (or message.content).
class RemoteBackend : public OracleBackend {
 public:
  RemoteBackend(std::string endpoint, std::string model_name,
                std::chrono::milliseconds timeout,
                std::optional<std::string> api_key);

  std::string Complete(const PromptPair &prompt) override;
  bool remote() const override { return true; }

 private:
  std::string base_url_;
  std::string path_;
  std::string model_name_;
  std::chrono::milliseconds timeout_;
  std::optional<std::string> api_key_;
};

// Splits "http://host:port/path" into ("http://host:port", "/path").
std::pair<std::string, std::string> SplitUrl(const std::string &url);

enum class BackendKind { kRemote, kMock, kReplay };

BackendKind ParseBackendKind(std::string_view name);

struct OracleBackendConfig {
  BackendKind kind = BackendKind::kMock;
  std::optional<std::string> endpoint;
  std::optional<std::string> model_name;
  std::optional<std::string> mock_script;
  std::optional<std::string> transcript;
  // Environment variable holding the API key for remote backends.
  std::string api_key_env = "NEUTRAPIPE_API_KEY";
  int max_retries = 3;
  int requests_per_minute = 60;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds backoff_base{500};

  // Throws ConfigError when a required field for the kind is missing.
  void Validate() const;
};

std::unique_ptr<OracleBackend> MakeBackend(const OracleBackendConfig &config);

// Thread-safe reply cache keyed by prompt hash. With a path, existing
// entries are loaded and new ones appended, so the file doubles as a replay
// transcript.
class ReplyCache {
 public:
  ReplyCache() = default;
  explicit ReplyCache(const std::string &path);

  std::optional<std::string> Get(const std::string &hash) const;
  void Put(const std::string &hash, const std::string &reply);
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> replies_;
  std::ofstream out_;
};

// Spaces calls at least 60s / requests_per_minute apart.
class RateLimiter {
 public:
  explicit RateLimiter(int requests_per_minute);
  void Acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
};

template <typename T>
using Outcome = std::variant<T, InstanceFailure>;

struct ResolveBatch {
  std::vector<ResolvedInstance> resolved;
  std::vector<InstanceFailure> failures;
};

struct ClassifyBatch {
  std::vector<ClassifiedInstance> classified;
  std::vector<InstanceFailure> failures;
};

struct OracleClientOptions {
  int max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
  // Zero disables client-side rate limiting.
  int requests_per_minute = 0;
  // Maximum concurrent backend calls in the batch methods.
  int workers = 1;
  // Replies with more whitespace-separated tokens are flagged suspicious.
  size_t suspicious_tokens = 50;
};

// Builds prompts, dispatches them through cache, rate limiter and retries,
// and validates the replies. Retries cover transport errors only.
class OracleClient {
 public:
  OracleClient(OracleBackend *backend, OracleClientOptions options,
               std::string background_text, std::string rules_text,
               ReplyCache *cache = nullptr);

  Outcome<ResolvedInstance> ResolveAntecedent(const PronounInstance &instance,
                                              const Abstract &abstract);
  Outcome<ClassifiedInstance> ClassifyAntecedent(
      const ResolvedInstance &resolved, const Abstract &abstract);

  // Results keep input order regardless of completion order.
  ResolveBatch ResolveAll(const std::vector<PronounInstance> &instances,
                          const std::map<std::string, Abstract> &abstracts);
  ClassifyBatch ClassifyAll(const std::vector<ResolvedInstance> &resolved,
                            const std::map<std::string, Abstract> &abstracts);

  // Number of prompts answered from the cache.
  size_t cache_hits() const { return cache_hits_; }
  size_t backend_calls() const { return backend_calls_; }

 private:
  // Throws TransportError after exhausting retries, OracleError otherwise.
  std::string Ask(const PromptPair &prompt);

  OracleBackend *backend_;
  OracleClientOptions options_;
  std::string background_;
  std::string rules_;
  ReplyCache own_cache_;
  ReplyCache *cache_;
  std::unique_ptr<RateLimiter> limiter_;
  std::atomic<size_t> cache_hits_{0};
  std::atomic<size_t> backend_calls_{0};
};

// Locates `antecedent` in the abstract: the first occurrence ending at or
// before the pronoun, else the first anywhere.
std::optional<Span> FindAntecedentSpan(std::u32string_view text,
                                       std::u32string_view antecedent,
                                       size_t pronoun_offset);

// Runs fn(i) for i in [0, n) on up to `workers` threads.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_ORACLE_H_
