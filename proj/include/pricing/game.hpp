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

#ifndef PRICING_GAME_HPP_
#define PRICING_GAME_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricing/demand.hpp"
#include "pricing/subset.hpp"
#include "pricing/valuation.hpp"
#include "pricing/value.hpp"

namespace pricing {

struct Buyer {
  Value weight;
  Valuation valuation;
};

// A pricing game: buyers (one for the basic game), per-item service costs,
// the buyers' decision map and the partition of items among sellers.
// Build through make_game, which validates and fills defaults.
struct GameSpec {
  std::vector<Buyer> buyers;
  std::vector<Value> costs;       // one per item
  DecisionMapSpec map;
  std::vector<Subset> ownership;  // seller -> items; disjoint cover of N

  int n() const { return buyers.front().valuation.n(); }
  int sellers() const { return static_cast<int>(ownership.size()); }
  const Valuation& valuation() const { return buyers.front().valuation; }
  bool single_buyer() const { return buyers.size() == 1; }
  bool zero_costs() const;
  bool single_item_sellers() const;
  // The item of a single-item seller.
  int item_of(int seller) const;
  Value total_weight() const;
};

// Empty costs mean zero costs, an empty ownership means one seller per item,
// and a missing map means MaximalLex with the identity order.
// Errors: InvalidInput for mismatched sizes, non-positive weights, negative
// costs or an ownership that is not a partition.
GameSpec make_game(std::vector<Buyer> buyers, std::vector<Value> costs = {},
                   std::optional<DecisionMapSpec> map = std::nullopt,
                   std::vector<Subset> ownership = {});

GameSpec basic_game(const Valuation& v, std::optional<DecisionMapSpec> map = std::nullopt,
                    std::vector<Value> costs = {});

// X_k(p) for every buyer k.
std::vector<Subset> chosen_sets(const GameSpec& g, const PriceVector& p);

// u_s = sum_k w_k * sum_{j in N_s, j in X_k(p)} (p_j - c_j).
std::vector<Value> seller_utilities(const GameSpec& g, const PriceVector& p);

// W(p) = sum_k w_k * (v_k(X_k(p)) - c(X_k(p))).
Value welfare(const GameSpec& g, const PriceVector& p);

struct BestResponse {
  Value value;       // sup of the seller's utility over its own price
  bool attained = true;
  Value witness_price;  // attains value, or value - O(delta) when not attained
};

// Exact best response of a single-item seller against the other prices (the
// seller's own entry of p is ignored). The utility is a step function of the
// own price with breakpoints A_k - B_k per buyer, so the sup is found by
// evaluating every breakpoint; ties at a breakpoint are resolved by the map.
// Errors: MultiItemSeller, InvalidInput.
BestResponse best_response(const GameSpec& g, int seller, const PriceVector& p,
                           const Value& delta = make_fraction(1, 1000));

enum class Verdict { kExactNE, kEpsNE, kNotNE };
std::string_view verdict_name(Verdict v);  // "ExactNE", "EpsNE", "NotNE"

struct SellerDiagnostics {
  int seller = 0;
  Value utility;
  Value best_value;
  bool attained = true;
  Value deviation_price;
  Value gain;  // best_value - utility, >= 0
};

// Outcome of the two-condition characterization for zero-cost single-buyer
// games: (1) every chosen item has a tying bundle without it, (2) no bundle
// with an unchosen item beats the chosen one when that item is free.
struct LemmaDiagnostics {
  bool evaluated = false;
  bool condition1 = true;
  bool condition2 = true;
  std::optional<int> failing_item;
  std::optional<Subset> witness;  // T from the failed condition
  // Only meaningful for maximal maps: whether the characterization and the
  // best-response verdict coincide.
  std::optional<bool> agrees;

  bool holds() const { return condition1 && condition2; }
};

LemmaDiagnostics lemma_conditions(const Valuation& v, const PriceVector& p, Subset chosen);

struct EquilibriumReport {
  Verdict verdict = Verdict::kNotNE;
  Value epsilon;
  PriceVector prices;
  std::vector<Subset> chosen;  // per buyer
  std::vector<SellerDiagnostics> sellers;
  Value welfare;
  Value worst_gain;
  std::optional<int> worst_seller;
  LemmaDiagnostics lemma;

  bool is_equilibrium() const { return verdict != Verdict::kNotNE; }
};

// Exact or epsilon equilibrium check from exact best responses.
// Errors: MultiItemSeller, InvalidInput (blocked or mis-sized prices).
EquilibriumReport check_equilibrium(const GameSpec& g, const PriceVector& p,
                                    const Value& epsilon = Value(0),
                                    const Value& delta = make_fraction(1, 1000));

}  // namespace pricing

#endif  // PRICING_GAME_HPP_
