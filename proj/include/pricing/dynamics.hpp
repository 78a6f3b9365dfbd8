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

#ifndef PRICING_DYNAMICS_HPP_
#define PRICING_DYNAMICS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricing/game.hpp"

namespace pricing {

struct DynamicsStep {
  std::size_t index = 0;
  int seller = 0;
  Value old_price;
  Value new_price;
  std::vector<Subset> chosen;     // per buyer, after the update
  std::vector<Value> utilities;   // per seller, after the update
};

enum class Outcome { kConverged, kCycle, kBudgetExhausted };
std::string_view outcome_name(Outcome o);  // "Converged", "Cycle", "BudgetExhausted"

struct DynamicsTrace {
  PriceVector initial;
  std::vector<DynamicsStep> steps;
  Outcome outcome = Outcome::kBudgetExhausted;
  PriceVector final_prices;
  // For cycles: the profile after cycle_start steps recurs, at the same
  // schedule position, after cycle_start + cycle_period steps.
  std::size_t cycle_start = 0;
  std::size_t cycle_period = 0;
  // Growth of the first rule's seller price over one round (rule_replay).
  std::optional<Value> round_growth;

  // Profile after the first k steps.
  PriceVector profile_after(std::size_t k) const;
};

// Sequential best-response dynamics. schedule lists sellers in update order
// and is repeated; empty means round robin 0..m-1. The acting seller moves to
// its best-response threshold when the sup is attained, to max(t - delta, c)
// when it is not, and to its cost when no positive utility is reachable.
// Stops after a full schedule pass without a price change (Converged), on a
// repeated (profile, schedule position) pair (Cycle), or after max_steps.
// Errors: MultiItemSeller, InvalidInput.
DynamicsTrace best_response_dynamics(const GameSpec& g, const PriceVector& p0,
                                     std::vector<int> schedule, const Value& delta,
                                     std::size_t max_steps);

// p_seller <- a * p_source + b.
struct AffineRule {
  int seller = 0;
  int source = 0;
  Value a;
  Value b;
};

// Applies the rules cyclically for the given number of steps. Prices are
// clamped at zero. round_growth is p_after_round / p_before_round for the
// first rule's seller over the last complete round, when defined.
// Errors: InvalidInput for rules naming unknown sellers.
DynamicsTrace rule_replay(const std::vector<AffineRule>& rules, const PriceVector& p0,
                          std::size_t steps);

struct Deviation {
  PriceVector profile;
  int seller = 0;
  Value price;
  Value gain;  // realized, exact
};

struct NonexistenceCertificate {
  Value epsilon;
  Value step;
  Value cap;
  Value margin;  // epsilon + L * step
  std::vector<Deviation> witnesses;  // one per grid point, odometer order
};

struct CertificateResult {
  std::optional<NonexistenceCertificate> certificate;
  std::optional<PriceVector> counter;  // first grid point without a witness
  std::uint64_t points = 0;

  bool produced() const { return certificate.has_value(); }
};

// For each profile on the grid {0, step, ...}^n up to cap, looks for a
// unilateral deviation whose realized gain exceeds epsilon + L * step, L the
// total buyer weight. Requires n <= 3 and step dividing cap.
// Errors: BudgetExceeded, InvalidInput, MultiItemSeller.
CertificateResult nonexistence_certificate(const GameSpec& g, const Value& epsilon,
                                           const Value& step, const Value& cap,
                                           std::uint64_t budget = 20'000'000);

struct NetworkEdge {
  std::string i;
  std::string j;
  int count = 1;
};

// Sellers are nodes (in the given order); each edge (i, j) contributes count
// buyers with v(S) = 1 iff S meets {i, j}. A self-loop (i, i) is a buyer
// captive to i. Copies of one edge are merged into a buyer of weight count.
// Errors: InvalidInput for unknown nodes, non-positive counts or no edges.
GameSpec bertrand_network(const std::vector<std::string>& nodes,
                          const std::vector<NetworkEdge>& edges,
                          std::optional<DecisionMapSpec> map = std::nullopt);

}  // namespace pricing

#endif  // PRICING_DYNAMICS_HPP_
