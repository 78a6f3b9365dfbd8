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

#ifndef PRICING_DETAIL_SCALED_HPP_
#define PRICING_DETAIL_SCALED_HPP_

#include <optional>
#include <span>
#include <vector>

#include "pricing/value.hpp"

namespace pricing::detail {

using Int = __int128;

// Maps a family of rationals onto integers by a common denominator so hot
// loops can run on machine integers. The mapping is exact; callers fall back
// to Value arithmetic when a scaled magnitude exceeds kLimit.
class Scaler {
 public:
  static constexpr long long kLimit = 1LL << 60;

  void include(const Value& x) {
    mpz_class d = x.get_den();
    mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), d.get_mpz_t());
  }
  void include(std::span<const Value> xs) {
    for (const auto& x : xs) include(x);
  }

  const mpz_class& denominator() const { return denominator_; }

  std::optional<Int> scale(const Value& x) const {
    mpz_class scaled = x.get_num() * (denominator_ / x.get_den());
    if (abs(scaled) >= mpz_class(static_cast<long>(kLimit))) return std::nullopt;
    return static_cast<Int>(scaled.get_si());
  }

  std::optional<std::vector<Int>> scale(std::span<const Value> xs) const {
    std::vector<Int> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
      auto s = scale(x);
      if (!s) return std::nullopt;
      out.push_back(*s);
    }
    return out;
  }

 private:
  mpz_class denominator_ = 1;
};

}  // namespace pricing::detail

#endif  // PRICING_DETAIL_SCALED_HPP_
