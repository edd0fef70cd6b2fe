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

#include "neutrapipe/log.h"

#include <iostream>
#include <mutex>

namespace neutrapipe {

namespace {

std::mutex &HandlerMutex() {
  static std::mutex mu;
  return mu;
}

WarningHandler &CurrentHandler() {
  static WarningHandler handler;
  return handler;
}

}  // namespace

void Warn(const std::string &message) {
  std::lock_guard<std::mutex> lock(HandlerMutex());
  const WarningHandler &handler = CurrentHandler();
  if (handler) {
    handler(message);
  } else {
    std::cerr << "warning: " << message << "\n";
  }
}

WarningHandler SetWarningHandler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(HandlerMutex());
  WarningHandler previous = std::move(CurrentHandler());
  CurrentHandler() = std::move(handler);
  return previous;
}

}  // namespace neutrapipe
