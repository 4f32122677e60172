// Copyright 2026 The randec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANDEC_ERRORS_H
#define RANDEC_ERRORS_H

#include <stdexcept>
#include <string>

namespace randec {

// Malformed scenario/sweep/group configuration (bad JSON, missing fields,
// out-of-range values). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed request that the engine cannot honor, e.g. cycle averaging of
// a time-dependent system. The CLI maps this (and std::invalid_argument,
// which covers precondition and budget violations) to exit code 3.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace randec

#endif  // RANDEC_ERRORS_H
