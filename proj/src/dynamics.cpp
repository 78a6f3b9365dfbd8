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

#include "pricing/dynamics.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "pricing/detail/game_data.hpp"
#include "pricing/error.hpp"
#include "pricing/grid_scan.hpp"

namespace pricing {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kConverged: return "Converged";
    case Outcome::kCycle: return "Cycle";
    case Outcome::kBudgetExhausted: return "BudgetExhausted";
  }
  return "unknown";
}

PriceVector DynamicsTrace::profile_after(std::size_t k) const {
  PriceVector p = initial;
  for (std::size_t s = 0; s < k && s < steps.size(); ++s) {
    const auto& step = steps[s];
    p.set(step.seller, step.new_price);
  }
  return p;
}

namespace {

std::string profile_key(const std::vector<Value>& prices, std::size_t position) {
  std::string key = std::to_string(position);
  for (const auto& x : prices) {
    key += ';';
    key += x.get_str();
  }
  return key;
}

}  // namespace

DynamicsTrace best_response_dynamics(const GameSpec& g, const PriceVector& p0,
                                     std::vector<int> schedule, const Value& delta,
                                     std::size_t max_steps) {
  if (delta <= 0) throw Error(ErrorKind::kInvalidInput, "delta must be positive");
  if (p0.size() != g.n() || p0.blocked_mask() != 0) {
    throw Error(ErrorKind::kInvalidInput, "initial profile does not match the game");
  }
  detail::require_single_item_sellers(g);
  if (schedule.empty()) {
    for (int s = 0; s < g.sellers(); ++s) schedule.push_back(s);
  }
  for (int s : schedule) {
    if (s < 0 || s >= g.sellers()) {
      throw Error(ErrorKind::kInvalidInput, "schedule names unknown seller " + std::to_string(s));
    }
  }

  DynamicsTrace trace;
  trace.initial = p0;
  std::vector<Value> prices = p0.values();
  detail::GameKernel<Value> kernel(detail::exact_data(g));
  kernel.load(prices);
  std::unordered_map<std::string, std::size_t> seen;
  seen.emplace(profile_key(prices, 0), 0);
  std::size_t quiet = 0;  // consecutive steps without a change

  for (std::size_t k = 0; k < max_steps; ++k) {
    const std::size_t position = k % schedule.size();
    const int seller = schedule[position];
    const int item = g.item_of(seller);
    const Value& cost = g.costs[static_cast<std::size_t>(item)];
    auto e = kernel.evaluate(item);
    Value next;
    if (e.sup <= 0) {
      next = cost;
    } else if (e.attained) {
      next = e.threshold;
    } else {
      next = max_value(e.threshold - delta, cost);
    }
    DynamicsStep step;
    step.index = k;
    step.seller = seller;
    step.old_price = prices[static_cast<std::size_t>(item)];
    step.new_price = next;
    const bool changed = next != step.old_price;
    prices[static_cast<std::size_t>(item)] = next;
    kernel.load(prices);
    step.chosen = kernel.chosen();
    for (int s = 0; s < g.sellers(); ++s) step.utilities.push_back(kernel.utility(g.item_of(s)));
    trace.steps.push_back(std::move(step));

    quiet = changed ? 0 : quiet + 1;
    if (quiet >= schedule.size()) {
      trace.outcome = Outcome::kConverged;
      break;
    }
    auto [it, inserted] = seen.emplace(profile_key(prices, (k + 1) % schedule.size()), k + 1);
    if (!inserted) {
      trace.outcome = Outcome::kCycle;
      trace.cycle_start = it->second;
      trace.cycle_period = k + 1 - it->second;
      break;
    }
  }
  trace.final_prices = PriceVector(prices);
  return trace;
}

DynamicsTrace rule_replay(const std::vector<AffineRule>& rules, const PriceVector& p0,
                          std::size_t steps) {
  if (rules.empty()) throw Error(ErrorKind::kInvalidInput, "no update rules");
  for (const auto& r : rules) {
    if (r.seller < 0 || r.seller >= p0.size() || r.source < 0 || r.source >= p0.size()) {
      throw Error(ErrorKind::kInvalidInput, "rule references an unknown seller");
    }
  }
  DynamicsTrace trace;
  trace.initial = p0;
  PriceVector p = p0;
  const int watched = rules.front().seller;
  std::optional<Value> round_start;
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t position = k % rules.size();
    if (position == 0) {
      if (round_start && *round_start != 0) trace.round_growth = p[watched] / *round_start;
      round_start = p[watched];
    }
    const auto& r = rules[position];
    DynamicsStep step;
    step.index = k;
    step.seller = r.seller;
    step.old_price = p[r.seller];
    step.new_price = positive_part(r.a * p[r.source] + r.b);
    p.set(r.seller, step.new_price);
    trace.steps.push_back(std::move(step));
  }
  if (steps % rules.size() == 0 && round_start && *round_start != 0) {
    trace.round_growth = p[watched] / *round_start;
  }
  trace.final_prices = p;
  trace.outcome = Outcome::kBudgetExhausted;
  return trace;
}

CertificateResult nonexistence_certificate(const GameSpec& g, const Value& epsilon,
                                           const Value& step, const Value& cap,
                                           std::uint64_t budget) {
  if (g.n() > 3) throw Error(ErrorKind::kInvalidInput, "certificates are limited to n <= 3");
  if (epsilon < 0) throw Error(ErrorKind::kInvalidInput, "epsilon must be non-negative");
  const std::uint64_t axis = grid_axis_points(step, cap);
  if (step * static_cast<unsigned long>(axis - 1) != cap) {
    throw Error(ErrorKind::kInvalidInput, "step must divide cap");
  }
  detail::require_single_item_sellers(g);
  check_grid_budget(g.n(), axis, budget);

  const int n = g.n();
  const Value margin = epsilon + g.total_weight() * step;
  NonexistenceCertificate cert{epsilon, step, cap, margin, {}};
  CertificateResult out;
  detail::GameKernel<Value> kernel(detail::exact_data(g));
  std::vector<std::uint64_t> index(static_cast<std::size_t>(n), 0);
  std::vector<Value> prices(static_cast<std::size_t>(n), Value(0));
  for (;;) {
    ++out.points;
    kernel.load(prices);
    std::optional<Deviation> found;
    for (int s = 0; s < g.sellers() && !found; ++s) {
      const int item = g.item_of(s);
      auto e = kernel.evaluate(item);
      const Value slack = e.sup - e.current - margin;
      if (slack <= 0) continue;
      const Value& cost = g.costs[static_cast<std::size_t>(item)];
      Value price = e.threshold;
      if (!e.attained) {
        // Stay inside the top interval and give up at most half the slack.
        const Value weight = e.sup / (e.threshold - cost);
        const Value floor = max_value(max_value(e.lower_threshold, cost), Value(0));
        price -= min_value(slack / (2 * weight), (e.threshold - floor) / 2);
      }
      const Value gain = kernel.deviation_utility(item, price) - e.current;
      if (gain > margin) found = Deviation{PriceVector(prices), s, price, gain};
    }
    if (!found) {
      out.counter = PriceVector(prices);
      return out;
    }
    cert.witnesses.push_back(std::move(*found));
    int k = 0;
    for (; k < n; ++k) {
      auto kk = static_cast<std::size_t>(k);
      if (++index[kk] < axis) {
        prices[kk] += step;
        break;
      }
      index[kk] = 0;
      prices[kk] = 0;
    }
    if (k == n) break;
  }
  out.certificate = std::move(cert);
  return out;
}

GameSpec bertrand_network(const std::vector<std::string>& nodes,
                          const std::vector<NetworkEdge>& edges,
                          std::optional<DecisionMapSpec> map) {
  const int n = static_cast<int>(nodes.size());
  if (n < 1 || n > kMaxItems) throw Error(ErrorKind::kInvalidInput, "bad node count");
  if (edges.empty()) throw Error(ErrorKind::kInvalidInput, "a network needs at least one edge");
  auto find = [&](const std::string& name) {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) throw Error(ErrorKind::kInvalidInput, "unknown node '" + name + "'");
    return static_cast<int>(it - nodes.begin());
  };
  {
    auto sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::kInvalidInput, "duplicate node names");
    }
  }
  // Merge parallel edges, keeping first-appearance order.
  std::vector<std::pair<Subset, int>> merged;
  for (const auto& e : edges) {
    if (e.count <= 0) throw Error(ErrorKind::kInvalidInput, "edge count must be positive");
    const Subset ends = singleton(find(e.i)) | singleton(find(e.j));
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first == ends; });
    if (it == merged.end()) {
      merged.emplace_back(ends, e.count);
    } else {
      it->second += e.count;
    }
  }
  std::vector<Buyer> buyers;
  for (const auto& [ends, count] : merged) {
    std::vector<Value> table(std::size_t{1} << n);
    for (Subset s = 0; s < table.size(); ++s) table[s] = (s & ends) ? 1 : 0;
    std::string label = "edge" + format_subset(ends);
    buyers.push_back(Buyer{Value(count), make_table(n, std::move(table), label)});
  }
  return make_game(std::move(buyers), {}, std::move(map));
}

}  // namespace pricing
