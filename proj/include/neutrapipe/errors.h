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

#ifndef NEUTRAPIPE_ERRORS_H_
#define NEUTRAPIPE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace neutrapipe {

// Base class for all pipeline errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing configuration (paths, flags, empty lexicons).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation contract (length mismatch, empty input).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Offsets or spans disagree with the text they point into.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Output sink failed part way through a write.
class WriteError : public Error {
 public:
  WriteError(const std::string &message, size_t written)
      : Error(message), written_(written) {}

  // Number of records successfully written before the failure.
  size_t written() const { return written_; }

 private:
  size_t written_;
};

// Transport-level failure talking to an oracle or scorer. Retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Non-retryable oracle failure (e.g. transcript miss during replay).
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_ERRORS_H_
