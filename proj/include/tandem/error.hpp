// Copyright 2026 The tandem-metrics Authors
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

#ifndef TANDEM_ERROR_HPP_
#define TANDEM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tandem {

// Thrown for any data or domain violation: malformed score files, empty
// trial classes, priors off the simplex, and the like. The CLI maps it to
// exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tandem

#endif  // TANDEM_ERROR_HPP_
