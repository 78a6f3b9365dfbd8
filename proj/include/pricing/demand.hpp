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

#ifndef PRICING_DEMAND_HPP_
#define PRICING_DEMAND_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricing/subset.hpp"
#include "pricing/valuation.hpp"
#include "pricing/value.hpp"

namespace pricing {

// Per-item prices. A blocked item is never offered: it is excluded from every
// candidate bundle, which plays the role of an infinite price.
class PriceVector {
 public:
  PriceVector() = default;
  // Throws InvalidInput on negative prices.
  explicit PriceVector(std::vector<Value> prices, Subset blocked = 0);
  static PriceVector zeros(int n) { return PriceVector(std::vector<Value>(static_cast<std::size_t>(n), Value(0))); }

  int size() const { return static_cast<int>(prices_.size()); }
  const Value& operator[](int item) const { return prices_[static_cast<std::size_t>(item)]; }
  const std::vector<Value>& values() const { return prices_; }
  bool blocked(int item) const { return contains(blocked_, item); }
  Subset blocked_mask() const { return blocked_; }

  void set(int item, Value price);
  void block(int item);

  // p(S) over the finite entries of S.
  Value total(Subset s) const;

  bool operator==(const PriceVector& other) const {
    return prices_ == other.prices_ && blocked_ == other.blocked_;
  }

  // "(1/4, 1/4, blocked)".
  std::string str() const;

 private:
  std::vector<Value> prices_;
  Subset blocked_ = 0;
};

enum class MapKind { kMaximalLex, kLexFirst, kGsGreedy };

std::string_view map_kind_name(MapKind kind);  // "maximal_lex", "lex_first", "gs_greedy"
MapKind parse_map_kind(std::string_view name);

// Tie-breaking rule of the buyer.
//  - MaximalLex: order-lexicographically first among inclusion-maximal demanded sets.
//  - LexFirst: order-lexicographically first demanded set.
//  - GsGreedy: add the best-marginal item (ties to the earliest in order) while
//    its marginal minus price is non-negative.
struct DecisionMapSpec {
  MapKind kind = MapKind::kMaximalLex;
  ItemOrder order;

  static DecisionMapSpec maximal_lex(int n) { return {MapKind::kMaximalLex, ItemOrder::identity(n)}; }
  static DecisionMapSpec lex_first(int n) { return {MapKind::kLexFirst, ItemOrder::identity(n)}; }
  static DecisionMapSpec gs_greedy(int n) { return {MapKind::kGsGreedy, ItemOrder::identity(n)}; }

  bool operator==(const DecisionMapSpec& other) const = default;
};

struct DemandResult {
  Value best_utility;
  std::vector<Subset> demanded;  // ascending bitmask order
  std::optional<Subset> chosen;
};

// Exhaustive argmax of v(S) - p(S) over bundles of non-blocked items.
DemandResult demand(const Valuation& v, const PriceVector& p);

// demand() plus the decision map's pick. Throws GreedyNotDemanded when the
// greedy map lands outside the demand correspondence.
DemandResult decide(const Valuation& v, const PriceVector& p, const DecisionMapSpec& map);

// Only the chosen bundle, without materializing the demanded list.
Subset choose(const Valuation& v, const PriceVector& p, const DecisionMapSpec& map);

struct PropertyCheck {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::optional<std::string> first_counterexample;

  bool all_passed() const { return passed == trials; }
};

struct PropertyReport {
  PropertyCheck demanded_membership;
  PropertyCheck maximality;
  PropertyCheck up_consistency;
  PropertyCheck gs_consistency;
};

// Samples prices on the grid {k/grid : 0 <= k <= grid * v(N)} together with
// raised variants and records how often the map is maximal, up-consistent and
// GS-consistent. Deterministic in rng_seed.
PropertyReport probe_map_properties(const Valuation& v, const DecisionMapSpec& map,
                                    std::size_t trials, std::uint64_t rng_seed,
                                    int grid = 4);

}  // namespace pricing

#endif  // PRICING_DEMAND_HPP_
