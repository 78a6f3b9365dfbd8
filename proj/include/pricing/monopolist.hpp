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

#ifndef PRICING_MONOPOLIST_HPP_
#define PRICING_MONOPOLIST_HPP_

#include <cstdint>
#include <vector>

#include "pricing/demand.hpp"
#include "pricing/valuation.hpp"

namespace pricing {

// r(S) = sum_{i in S} v(i | S \ i).
Value revenue_of_set(const Valuation& v, Subset s);

struct MonopolistResult {
  Subset set = 0;
  Value revenue;
  PriceVector prices;  // v(i | S \ i) on S, blocked elsewhere
  // Whether the buyer, under MaximalLex with the identity order, picks
  // exactly set at prices. Always true for submodular v.
  bool realized = true;
  Value welfare;       // v(set)
  // Range of v over all revenue maximizers (brute force only; otherwise
  // both equal welfare).
  Value welfare_min;
  Value welfare_max;
  std::uint64_t samples_used = 0;
};

// Exact revenue maximizer; the lexicographically first maximizer under the
// identity order is reported.
MonopolistResult brute_force_monopolist(const Valuation& v);

// One draw: size k with probability 1 / (k H_n), then a uniform k-subset.
MonopolistResult harmonic_sample(const Valuation& v, std::uint64_t seed);

// E[r(S)] under the sampler, by full enumeration. Equals v(N) / H_n.
// Errors: SizeLimit for n > 16.
Value exact_sampler_expectation(const Valuation& v);

// Best of ceil(s * H_n) independent draws; ties keep the earliest draw.
// Errors: InvalidInput for s < 1.
MonopolistResult repeated_sample(const Valuation& v, std::uint64_t s, std::uint64_t seed);

// ceil(s * H_n).
std::uint64_t sample_count(int n, std::uint64_t s);

struct SymmetrizationProfile {
  std::vector<Value> averages;  // v~(k), k = 0..n
  std::vector<Value> deltas;    // v~(k) - v~(k-1), index k = 1..n (deltas[0] = 0)
  int best_k = 0;               // first k maximizing k * deltas[k]
  Value best_value;             // best_k * deltas[best_k]
};

// Errors: SizeLimit for n > 16.
SymmetrizationProfile symmetrize(const Valuation& v);

inline constexpr int kMaxEnumerationItems = 16;

}  // namespace pricing

#endif  // PRICING_MONOPOLIST_HPP_
