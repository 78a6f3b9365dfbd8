// Copyright 2026 The Combinatorial Pricing Authors
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

#ifndef PRICING_ERROR_HPP_
#define PRICING_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pricing {

enum class ErrorKind {
  kInvalidInput,
  kNonZeroEmptySet,
  kNonMonotone,
  kSizeLimit,
  kOverlappingSets,
  kMalformedFamily,
  kGreedyNotDemanded,
  kMultiItemSeller,
  kNotSubmodular,
  kInputNotEquilibrium,
  kMapNotUpConsistent,
  kBudgetExceeded,
  kParseError,
  kValidationError,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI and tests can branch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pricing

#endif  // PRICING_ERROR_HPP_
