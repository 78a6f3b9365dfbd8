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

#include "pricing/game.hpp"

#include <algorithm>

#include "pricing/detail/game_data.hpp"
#include "pricing/error.hpp"

namespace pricing {

bool GameSpec::zero_costs() const {
  return std::all_of(costs.begin(), costs.end(), [](const Value& c) { return c == 0; });
}

bool GameSpec::single_item_sellers() const {
  return std::all_of(ownership.begin(), ownership.end(),
                     [](Subset s) { return cardinality(s) == 1; });
}

int GameSpec::item_of(int seller) const {
  const Subset owned = ownership.at(static_cast<std::size_t>(seller));
  if (cardinality(owned) != 1) {
    throw Error(ErrorKind::kMultiItemSeller,
                "seller " + std::to_string(seller) + " owns " + format_subset(owned));
  }
  return std::countr_zero(owned);
}

Value GameSpec::total_weight() const {
  Value total = 0;
  for (const auto& b : buyers) total += b.weight;
  return total;
}

GameSpec make_game(std::vector<Buyer> buyers, std::vector<Value> costs,
                   std::optional<DecisionMapSpec> map, std::vector<Subset> ownership) {
  if (buyers.empty()) throw Error(ErrorKind::kInvalidInput, "a game needs at least one buyer");
  const int n = buyers.front().valuation.n();
  for (std::size_t b = 0; b < buyers.size(); ++b) {
    if (buyers[b].valuation.n() != n) {
      throw Error(ErrorKind::kInvalidInput, "buyer " + std::to_string(b) + " has " +
                                                std::to_string(buyers[b].valuation.n()) +
                                                " items, expected " + std::to_string(n));
    }
    if (buyers[b].weight <= 0) {
      throw Error(ErrorKind::kInvalidInput, "buyer " + std::to_string(b) + " has non-positive weight");
    }
  }
  if (costs.empty()) costs.assign(static_cast<std::size_t>(n), Value(0));
  if (costs.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::kInvalidInput, "expected " + std::to_string(n) + " costs");
  }
  for (auto& c : costs) {
    c.canonicalize();
    if (c < 0) throw Error(ErrorKind::kInvalidInput, "negative service cost");
  }
  if (!map) map = DecisionMapSpec::maximal_lex(n);
  if (map->order.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "decision map order does not cover the items");
  }
  if (ownership.empty()) {
    for (int i = 0; i < n; ++i) ownership.push_back(singleton(i));
  }
  Subset covered = 0;
  for (Subset s : ownership) {
    if (s == 0 || (s & covered) != 0 || !is_subset(s, full_set(n))) {
      throw Error(ErrorKind::kInvalidInput, "ownership is not a partition of the items");
    }
    covered |= s;
  }
  if (covered != full_set(n)) {
    throw Error(ErrorKind::kInvalidInput, "ownership does not cover every item");
  }
  return GameSpec{std::move(buyers), std::move(costs), std::move(*map), std::move(ownership)};
}

GameSpec basic_game(const Valuation& v, std::optional<DecisionMapSpec> map,
                    std::vector<Value> costs) {
  return make_game({Buyer{Value(1), v}}, std::move(costs), std::move(map));
}

namespace detail {

GameData<Value> exact_data(const GameSpec& g) {
  GameData<Value> data;
  data.n = g.n();
  for (const auto& b : g.buyers) {
    auto t = b.valuation.table();
    data.tables.emplace_back(t.begin(), t.end());
    data.weights.push_back(b.weight);
  }
  data.costs = g.costs;
  data.kind = g.map.kind;
  data.order = g.map.order;
  return data;
}

std::optional<ScaledGame> scaled_data(const GameSpec& g, std::span<const Value> prices) {
  ScaledGame out;
  // Weights multiply money amounts, so they are scaled separately.
  Scaler weights;
  for (const auto& b : g.buyers) {
    out.scaler.include(b.valuation.table());
    weights.include(b.weight);
  }
  out.scaler.include(g.costs);
  out.scaler.include(prices);
  out.data.n = g.n();
  for (const auto& b : g.buyers) {
    auto t = out.scaler.scale(b.valuation.table());
    auto w = weights.scale(b.weight);
    if (!t || !w) return std::nullopt;
    out.data.tables.push_back(std::move(*t));
    out.data.weights.push_back(*w);
  }
  auto c = out.scaler.scale(g.costs);
  if (!c) return std::nullopt;
  out.data.costs = std::move(*c);
  out.data.kind = g.map.kind;
  out.data.order = g.map.order;
  out.weight_scale = weights.denominator();
  return out;
}

void require_single_item_sellers(const GameSpec& g) {
  for (int s = 0; s < g.sellers(); ++s) g.item_of(s);
}

}  // namespace detail

namespace {

void check_prices(const GameSpec& g, const PriceVector& p) {
  if (p.size() != g.n()) {
    throw Error(ErrorKind::kInvalidInput, "price vector has " + std::to_string(p.size()) +
                                              " entries for " + std::to_string(g.n()) + " items");
  }
  if (p.blocked_mask() != 0) {
    throw Error(ErrorKind::kInvalidInput, "blocked prices are not strategies in the game");
  }
}

}  // namespace

std::vector<Subset> chosen_sets(const GameSpec& g, const PriceVector& p) {
  if (p.size() != g.n()) throw Error(ErrorKind::kInvalidInput, "price vector size mismatch");
  std::vector<Subset> out;
  for (const auto& b : g.buyers) out.push_back(choose(b.valuation, p, g.map));
  return out;
}

std::vector<Value> seller_utilities(const GameSpec& g, const PriceVector& p) {
  const auto chosen = chosen_sets(g, p);
  std::vector<Value> u(static_cast<std::size_t>(g.sellers()), Value(0));
  for (std::size_t b = 0; b < chosen.size(); ++b) {
    for (int s = 0; s < g.sellers(); ++s) {
      for (int j : items_of(chosen[b] & g.ownership[static_cast<std::size_t>(s)])) {
        u[static_cast<std::size_t>(s)] += g.buyers[b].weight * (p[j] - g.costs[static_cast<std::size_t>(j)]);
      }
    }
  }
  return u;
}

Value welfare(const GameSpec& g, const PriceVector& p) {
  const auto chosen = chosen_sets(g, p);
  Value w = 0;
  for (std::size_t b = 0; b < chosen.size(); ++b) {
    Value cost = 0;
    for (int j : items_of(chosen[b])) cost += g.costs[static_cast<std::size_t>(j)];
    w += g.buyers[b].weight * (g.buyers[b].valuation(chosen[b]) - cost);
  }
  return w;
}

namespace {

// Witness price for an evaluated seller.
Value witness_price(const detail::SellerEval<Value>& e, const Value& cost, const Value& delta) {
  if (e.sup <= 0) return cost;
  if (e.attained) return e.threshold;
  Value floor = max_value(max_value(e.lower_threshold, cost), Value(0));
  Value step = min_value(delta, (e.threshold - floor) / 2);
  return e.threshold - step;
}

BestResponse respond(detail::GameKernel<Value>& kernel, const GameSpec& g, int item,
                     const Value& delta) {
  auto e = kernel.evaluate(item);
  BestResponse br;
  br.value = e.sup;
  br.attained = e.sup <= 0 || e.attained;
  br.witness_price = witness_price(e, g.costs[static_cast<std::size_t>(item)], delta);
  return br;
}

}  // namespace

BestResponse best_response(const GameSpec& g, int seller, const PriceVector& p,
                           const Value& delta) {
  if (delta <= 0) throw Error(ErrorKind::kInvalidInput, "delta must be positive");
  check_prices(g, p);
  const int item = g.item_of(seller);
  detail::GameKernel<Value> kernel(detail::exact_data(g));
  kernel.load(p.values());
  return respond(kernel, g, item, delta);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kExactNE: return "ExactNE";
    case Verdict::kEpsNE: return "EpsNE";
    case Verdict::kNotNE: return "NotNE";
  }
  return "unknown";
}

LemmaDiagnostics lemma_conditions(const Valuation& v, const PriceVector& p, Subset chosen) {
  LemmaDiagnostics d;
  d.evaluated = true;
  std::vector<Value> paid, u;
  detail::fill_utilities<Value>(v.table(), p.values(), v.n(), paid, u);
  const Subset all = v.items();
  const Value& base = u[chosen];
  for (int i = 0; i < v.n() && d.holds(); ++i) {
    const Subset bit = singleton(i);
    if (contains(chosen, i)) {
      bool found = false;
      for (Subset t = 0; t <= all && !found; ++t) {
        if (!(t & bit) && u[t] == base) found = true;
      }
      if (!found) {
        d.condition1 = false;
        d.failing_item = i;
      }
    } else {
      for (Subset t = 0; t <= all; ++t) {
        if ((t & bit) && base < u[t] + p[i]) {
          d.condition2 = false;
          d.failing_item = i;
          d.witness = t;
          break;
        }
      }
    }
  }
  return d;
}

EquilibriumReport check_equilibrium(const GameSpec& g, const PriceVector& p,
                                    const Value& epsilon, const Value& delta) {
  if (epsilon < 0) throw Error(ErrorKind::kInvalidInput, "epsilon must be non-negative");
  if (delta <= 0) throw Error(ErrorKind::kInvalidInput, "delta must be positive");
  check_prices(g, p);
  detail::require_single_item_sellers(g);

  EquilibriumReport r;
  r.epsilon = epsilon;
  r.prices = p;
  detail::GameKernel<Value> kernel(detail::exact_data(g));
  kernel.load(p.values());
  r.chosen = kernel.chosen();
  r.welfare = welfare(g, p);
  r.worst_gain = 0;
  for (int s = 0; s < g.sellers(); ++s) {
    const int item = g.item_of(s);
    SellerDiagnostics d;
    d.seller = s;
    d.utility = kernel.utility(item);
    auto br = respond(kernel, g, item, delta);
    d.best_value = br.value;
    d.attained = br.attained;
    d.deviation_price = br.witness_price;
    d.gain = positive_part(br.value - d.utility);
    if (d.gain > r.worst_gain || (!r.worst_seller && d.gain > 0)) {
      r.worst_gain = d.gain;
      r.worst_seller = s;
    }
    r.sellers.push_back(std::move(d));
  }
  if (r.worst_gain == 0) {
    r.verdict = Verdict::kExactNE;
  } else if (r.worst_gain <= epsilon) {
    r.verdict = Verdict::kEpsNE;
  } else {
    r.verdict = Verdict::kNotNE;
  }
  if (g.single_buyer() && g.zero_costs()) {
    r.lemma = lemma_conditions(g.valuation(), p, r.chosen.front());
    if (g.map.kind == MapKind::kMaximalLex) {
      r.lemma.agrees = r.lemma.holds() == (r.verdict == Verdict::kExactNE);
    }
  }
  return r;
}

}  // namespace pricing
