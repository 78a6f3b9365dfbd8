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

#ifndef PRICING_GRID_SCAN_HPP_
#define PRICING_GRID_SCAN_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "pricing/game.hpp"

namespace pricing {

struct GridProfile {
  PriceVector prices;
  Verdict verdict = Verdict::kNotNE;
  std::vector<Value> utilities;  // per seller
  Value welfare;
  Value worst_gain;
};

struct GridScanResult {
  Value step;
  Value epsilon;
  Value cap;
  std::uint64_t points = 0;
  std::vector<GridProfile> equilibria;  // in odometer order, item 0 fastest
  std::optional<Value> min_welfare;
  std::optional<Value> max_welfare;
};

inline constexpr std::uint64_t kDefaultScanBudget = 20'000'000;

// Every profile on {0, step, 2 step, ...}^n up to cap is checked with exact
// best responses; epsilon-equilibria are returned with utilities and welfare.
// Work is n * (floor(cap/step) + 1)^n seller checks.
// Errors: BudgetExceeded, MultiItemSeller, InvalidInput.
GridScanResult grid_equilibrium_scan(const GameSpec& g, const Value& step, const Value& epsilon,
                                     const Value& cap, std::uint64_t budget = kDefaultScanBudget);

// Number of grid points per axis, floor(cap/step) + 1.
std::uint64_t grid_axis_points(const Value& step, const Value& cap);

// n * axis^n, saturating; throws BudgetExceeded when above budget.
std::uint64_t check_grid_budget(int n, std::uint64_t axis, std::uint64_t budget);

}  // namespace pricing

#endif  // PRICING_GRID_SCAN_HPP_
