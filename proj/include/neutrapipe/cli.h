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

#ifndef NEUTRAPIPE_CLI_H_
#define NEUTRAPIPE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace neutrapipe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitTooManyFailures = 2;

// Runs one subcommand. `args` excludes the program name. Reports and tables
// go to `out`; warnings and the JSON run summary go to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

}  // namespace neutrapipe

#endif  // NEUTRAPIPE_CLI_H_
