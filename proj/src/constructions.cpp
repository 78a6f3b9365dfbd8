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

#include "pricing/constructions.hpp"

#include <stdexcept>

#include "pricing/detail/game_data.hpp"
#include "pricing/error.hpp"

namespace pricing {

namespace {

// v(T | N \ T) for every T.
std::vector<Value> pareto_bounds(const Valuation& v) {
  const Subset all = v.items();
  std::vector<Value> bound(std::size_t{1} << v.n());
  for (Subset t = 0; t <= all; ++t) bound[t] = v(all) - v(all & ~t);
  return bound;
}

}  // namespace

PriceVector pareto_equilibrium(const Valuation& v, const ItemOrder& order) {
  if (order.size() != v.n()) throw Error(ErrorKind::kInvalidInput, "order does not cover the items");
  const auto bound = pareto_bounds(v);
  const Subset all = v.items();
  PriceVector p = PriceVector::zeros(v.n());
  for (int i : order.items()) {
    const Subset bit = singleton(i);
    std::optional<Value> best;
    for (Subset t = bit; t <= all; t = (t + 1) | bit) {
      Value slack = bound[t] - p.total(t & ~bit);
      if (!best || slack < *best) best = std::move(slack);
    }
    p.set(i, positive_part(*best));
  }
  return p;
}

ParetoCheck check_pareto(const Valuation& v, const PriceVector& p) {
  if (p.size() != v.n()) throw Error(ErrorKind::kInvalidInput, "price vector size mismatch");
  const auto bound = pareto_bounds(v);
  const Subset all = v.items();
  ParetoCheck out;
  Subset tight_items = 0;
  for (Subset t = 1; t <= all; ++t) {
    const Value total = p.total(t);
    if (total > bound[t]) {
      out.feasible = false;
      out.pareto = false;
      out.violated = t;
      return out;
    }
    if (total == bound[t]) tight_items |= t;
  }
  if (tight_items != all) {
    out.pareto = false;
    out.raisable_item = std::countr_zero(all & ~tight_items);
  }
  return out;
}

SubmodularPrediction submodular_prediction(const Valuation& v) {
  if (auto w = find_submodularity_violation(v)) {
    throw Error(ErrorKind::kNotSubmodular, w->detail);
  }
  SubmodularPrediction out;
  const Subset all = v.items();
  std::vector<Value> prices;
  for (int i = 0; i < v.n(); ++i) {
    prices.push_back(item_marginal(v, i, all & ~singleton(i)));
    if (prices.back() == 0) out.unpinned.push_back(i);
  }
  out.prices = PriceVector(std::move(prices));
  out.report = check_equilibrium(basic_game(v), out.prices);
  if (out.report.verdict != Verdict::kExactNE) {
    throw std::logic_error("marginal prices of a submodular valuation failed the equilibrium check");
  }
  return out;
}

PriceVector epsilon_transfer(const Valuation& v, const PriceVector& p, const Value& epsilon,
                             std::optional<ItemOrder> order) {
  if (epsilon <= 0) throw Error(ErrorKind::kInvalidInput, "epsilon must be positive");
  if (!order) order = ItemOrder::identity(v.n());
  const GameSpec g = basic_game(v, DecisionMapSpec{MapKind::kMaximalLex, *order});
  const auto report = check_equilibrium(g, p);
  if (report.verdict != Verdict::kExactNE) {
    throw Error(ErrorKind::kInputNotEquilibrium,
                p.str() + " is not an exact equilibrium (gain " + to_string(report.worst_gain) + ")");
  }
  const Value shift = epsilon / v.n();
  PriceVector out = p;
  for (int i : items_of(report.chosen.front())) out.set(i, positive_part(p[i] - shift));
  return out;
}

PriceVector cost_epsilon_equilibrium(const GameSpec& g, const Value& epsilon) {
  if (epsilon <= 0) throw Error(ErrorKind::kInvalidInput, "epsilon must be positive");
  if (g.map.kind == MapKind::kGsGreedy) {
    throw Error(ErrorKind::kMapNotUpConsistent, "gs_greedy is not an up-consistent map");
  }
  if (!g.single_buyer()) throw Error(ErrorKind::kInvalidInput, "expected a single buyer");
  detail::require_single_item_sellers(g);

  PriceVector p(g.costs);
  detail::GameKernel<Value> kernel(detail::exact_data(g));
  kernel.load(p.values());
  const Subset target = kernel.chosen().front();
  bool raised = true;
  while (raised) {
    raised = false;
    for (int i : items_of(target)) {
      // The buyer keeps i exactly below t = A - B; at t the map decides.
      const Value t = kernel.threshold(0, i);
      const Value& current = p[i];
      Value next;
      if (t >= current + epsilon && kernel.deviation_utility(i, t) == g.buyers.front().weight * (t - g.costs[static_cast<std::size_t>(i)])) {
        next = t;
      } else if (t > current + epsilon) {
        next = max_value(current + epsilon, (current + t) / 2);
      } else {
        continue;
      }
      p.set(i, next);
      kernel.load(p.values());
      if (kernel.chosen().front() != target) {
        throw std::logic_error("raise changed the chosen set " + format_subset(target));
      }
      raised = true;
    }
  }
  return p;
}

CostConditions cost_set_conditions(const Valuation& v, std::span<const Value> costs, Subset s) {
  if (costs.size() != static_cast<std::size_t>(v.n())) {
    throw Error(ErrorKind::kInvalidInput, "expected one cost per item");
  }
  CostConditions out;
  out.chosen = s;
  for (int i : items_of(s)) {
    if (item_marginal(v, i, s & ~singleton(i)) < costs[static_cast<std::size_t>(i)]) {
      out.condition1 = false;
      out.failing_item = i;
      return out;
    }
  }
  std::vector<Value> subset_cost(std::size_t{1} << v.n());
  for (Subset t = 1; t <= v.items(); ++t) {
    subset_cost[t] = subset_cost[t & (t - 1)] + costs[static_cast<std::size_t>(std::countr_zero(t))];
  }
  for (int j = 0; j < v.n(); ++j) {
    if (contains(s, j)) continue;
    for (Subset t = s;; t = (t - 1) & s) {
      if (v(t | singleton(j)) + subset_cost[s & ~t] - costs[static_cast<std::size_t>(j)] > v(s)) {
        out.condition2 = false;
        out.failing_item = j;
        out.witness = t;
        return out;
      }
      if (t == 0) break;
    }
  }
  return out;
}

CostConditions cost_equilibrium_conditions(const GameSpec& g, const PriceVector& p) {
  if (!g.single_buyer()) throw Error(ErrorKind::kInvalidInput, "expected a single buyer");
  return cost_set_conditions(g.valuation(), g.costs, chosen_sets(g, p).front());
}

LocalSearchResult local_search_welfare(const Valuation& v, std::span<const Value> costs,
                                       Subset start) {
  if (costs.size() != static_cast<std::size_t>(v.n())) {
    throw Error(ErrorKind::kInvalidInput, "expected one cost per item");
  }
  if (!is_subset(start, v.items())) throw Error(ErrorKind::kInvalidInput, "start set out of range");
  const Subset all = v.items();
  std::vector<Value> w(std::size_t{1} << v.n());
  for (Subset t = 0; t <= all; ++t) {
    Value c = 0;
    for (int i : items_of(t)) c += costs[static_cast<std::size_t>(i)];
    w[t] = v(t) - c;
  }
  LocalSearchResult out;
  out.set = start;
  for (;;) {
    Subset best = out.set;
    auto consider = [&](Subset t) {
      if (w[t] > w[best]) best = t;
    };
    for (int i = 0; i < v.n(); ++i) {
      consider(out.set ^ singleton(i));  // add or remove
    }
    for (int i : items_of(out.set)) {
      for (int j : items_of(all & ~out.set)) consider((out.set & ~singleton(i)) | singleton(j));
    }
    if (best == out.set) break;
    out.set = best;
    ++out.moves;
  }
  out.welfare = w[out.set];
  out.optimum = 0;
  for (Subset t = 1; t <= all; ++t) {
    if (w[t] > w[out.optimum]) out.optimum = t;
  }
  out.optimum_welfare = w[out.optimum];
  out.optimal = out.welfare == out.optimum_welfare;
  return out;
}

}  // namespace pricing
