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

#ifndef PRICING_CONSTRUCTIONS_HPP_
#define PRICING_CONSTRUCTIONS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "pricing/demand.hpp"
#include "pricing/game.hpp"
#include "pricing/valuation.hpp"

namespace pricing {

// Sequential raise inside F = {p >= 0 : p(T) <= v(T | N \ T) for all T}.
// Each item in order is raised to its largest feasible price, giving a
// Pareto point of F, i.e. a full-trade equilibrium under a maximal map.
PriceVector pareto_equilibrium(const Valuation& v, const ItemOrder& order);

struct ParetoCheck {
  bool feasible = true;
  bool pareto = true;
  std::optional<Subset> violated;      // constraint T with p(T) > v(T | N \ T)
  std::optional<int> raisable_item;    // an item with slack in every constraint
};

ParetoCheck check_pareto(const Valuation& v, const PriceVector& p);

struct SubmodularPrediction {
  PriceVector prices;           // p_i = v(i | N \ i)
  std::vector<int> unpinned;    // items with zero marginal; price is not unique
  EquilibriumReport report;     // exact check under MaximalLex (identity order)
};

// Errors: NotSubmodular.
SubmodularPrediction submodular_prediction(const Valuation& v);

// p^eps_i = max(p_i - eps/n, 0) on X(p), unchanged elsewhere. p must be an
// exact equilibrium under MaximalLex with the given order.
// Errors: InputNotEquilibrium, InvalidInput (eps <= 0).
PriceVector epsilon_transfer(const Valuation& v, const PriceVector& p, const Value& epsilon,
                             std::optional<ItemOrder> order = std::nullopt);

// Starting from p = c, repeatedly raises the price of a chosen seller by at
// least epsilon while it stays chosen. The result keeps X(p) = X(c) and is an
// epsilon-equilibrium. Requires a single buyer and single-item sellers.
// Errors: MapNotUpConsistent (GsGreedy), MultiItemSeller, InvalidInput.
PriceVector cost_epsilon_equilibrium(const GameSpec& g, const Value& epsilon);

struct CostConditions {
  Subset chosen = 0;
  bool condition1 = true;  // v(i | S \ i) >= c_i for i in S
  bool condition2 = true;  // v(T + j) + c(S \ T) - c_j <= v(S) for T in S, j not in S
  std::optional<int> failing_item;     // i for (1), j for (2)
  std::optional<Subset> witness;       // T for (2)

  bool holds() const { return condition1 && condition2; }
};

CostConditions cost_set_conditions(const Valuation& v, std::span<const Value> costs, Subset s);

// Evaluated on S = X(p). Errors: InvalidInput unless the game has one buyer.
CostConditions cost_equilibrium_conditions(const GameSpec& g, const PriceVector& p);

struct LocalSearchResult {
  Subset set = 0;
  Value welfare;
  std::size_t moves = 0;
  Subset optimum = 0;  // first brute-force maximizer of v(S) - c(S)
  Value optimum_welfare;
  bool optimal = false;  // welfare == optimum_welfare
};

// Steepest ascent on v(S) - c(S) over single add, remove and swap moves.
// Only strict improvements are taken, so the walk terminates.
LocalSearchResult local_search_welfare(const Valuation& v, std::span<const Value> costs,
                                       Subset start);

}  // namespace pricing

#endif  // PRICING_CONSTRUCTIONS_HPP_
