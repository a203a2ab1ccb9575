// Copyright 2026 The Macrospace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace macrospace {

/// Distinguishes malformed input from a well-formed request that has no
/// mathematical solution. The CLI maps these to exit codes 2 and 1.
enum class ErrorCategory { input, construction };

/// Every failure raised by the library. `kind()` is a stable machine-readable
/// name (e.g. "TriangleViolation"); `fields()` carries the witnesses.
class Error : public std::runtime_error {
 public:
  using Field = std::pair<std::string, std::string>;

  Error(ErrorCategory category, std::string kind, std::string message,
        std::vector<Field> fields = {})
      : std::runtime_error(kind + ": " + message),
        category_(category),
        kind_(std::move(kind)),
        fields_(std::move(fields)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }
  const std::vector<Field>& fields() const noexcept { return fields_; }

  const std::string* field(const std::string& name) const {
    for (const auto& [key, value] : fields_) {
      if (key == name) return &value;
    }
    return nullptr;
  }

 private:
  ErrorCategory category_;
  std::string kind_;
  std::vector<Field> fields_;
};

inline Error input_error(std::string kind, std::string message,
                         std::vector<Error::Field> fields = {}) {
  return Error(ErrorCategory::input, std::move(kind), std::move(message),
               std::move(fields));
}

inline Error construction_error(std::string kind, std::string message,
                                std::vector<Error::Field> fields = {}) {
  return Error(ErrorCategory::construction, std::move(kind),
               std::move(message), std::move(fields));
}

}  // namespace macrospace
