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

#ifndef NEUTRAPIPE_LOG_H_
#define NEUTRAPIPE_LOG_H_

#include <functional>
#include <string>

namespace neutrapipe {

using WarningHandler = std::function<void(const std::string &)>;

// Reports a non-fatal condition. Goes to stderr unless a handler is set.
void Warn(const std::string &message);

// Installs a warning handler and returns the previous one. Passing an empty
// handler restores the stderr default.
WarningHandler SetWarningHandler(WarningHandler handler);

// Restores the previous handler on destruction.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler)
      : previous_(SetWarningHandler(std::move(handler))) {}
  ~ScopedWarningHandler() { SetWarningHandler(std::move(previous_)); }

  ScopedWarningHandler(const ScopedWarningHandler &) = delete;
  ScopedWarningHandler &operator=(const ScopedWarningHandler &) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_LOG_H_
