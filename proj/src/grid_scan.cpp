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

#include "pricing/grid_scan.hpp"

#include <limits>
#include <stdexcept>

#include "pricing/detail/game_data.hpp"
#include "pricing/error.hpp"

namespace pricing {

std::uint64_t grid_axis_points(const Value& step, const Value& cap) {
  if (step <= 0) throw Error(ErrorKind::kInvalidInput, "grid step must be positive");
  if (cap < 0) throw Error(ErrorKind::kInvalidInput, "price cap must be non-negative");
  mpz_class k = cap.get_num() * step.get_den();
  mpz_class d = cap.get_den() * step.get_num();
  mpz_fdiv_q(k.get_mpz_t(), k.get_mpz_t(), d.get_mpz_t());
  if (k > mpz_class(1000000000L)) {
    throw Error(ErrorKind::kBudgetExceeded, "grid axis is too long");
  }
  return k.get_ui() + 1;
}

std::uint64_t check_grid_budget(int n, std::uint64_t axis, std::uint64_t budget) {
  unsigned __int128 work = static_cast<unsigned __int128>(n);
  for (int i = 0; i < n; ++i) {
    work *= axis;
    if (work > budget) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "grid scan needs more than " + std::to_string(budget) + " seller checks");
    }
  }
  return static_cast<std::uint64_t>(work);
}

namespace {

// Calls visit(kernel, index) for every grid point; the kernel is loaded with
// the point's prices.
template <class Num, class Visit>
void walk_grid(detail::GameKernel<Num>& kernel, int n, std::uint64_t axis, const Num& step,
               Visit&& visit) {
  std::vector<std::uint64_t> index(static_cast<std::size_t>(n), 0);
  std::vector<Num> prices(static_cast<std::size_t>(n), Num(0));
  for (;;) {
    kernel.load(prices);
    visit(kernel, index);
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
    if (k == n) return;
  }
}

template <class Num>
std::vector<std::vector<std::uint64_t>> candidates(detail::GameData<Num> data, std::uint64_t axis,
                                                   const Num& step, const Num& epsilon) {
  const int n = data.n;
  detail::GameKernel<Num> kernel(std::move(data));
  std::vector<std::vector<std::uint64_t>> found;
  walk_grid<Num>(kernel, n, axis, step, [&](detail::GameKernel<Num>& k, const auto& index) {
    for (int i = 0; i < n; ++i) {
      auto e = k.evaluate(i);
      if (e.sup - e.current > epsilon) return;
    }
    found.push_back(index);
  });
  return found;
}

}  // namespace

GridScanResult grid_equilibrium_scan(const GameSpec& g, const Value& step, const Value& epsilon,
                                     const Value& cap, std::uint64_t budget) {
  if (epsilon < 0) throw Error(ErrorKind::kInvalidInput, "epsilon must be non-negative");
  detail::require_single_item_sellers(g);
  const int n = g.n();
  const std::uint64_t axis = grid_axis_points(step, cap);
  GridScanResult out;
  out.step = step;
  out.epsilon = epsilon;
  out.cap = cap;
  check_grid_budget(n, axis, budget);
  out.points = 1;
  for (int i = 0; i < n; ++i) out.points *= axis;

  // Integer fast path; the largest price on the grid bounds every scaled
  // magnitude the kernel forms.
  std::vector<std::vector<std::uint64_t>> found;
  const Value top = step * static_cast<unsigned long>(axis - 1);
  const Value extras[] = {step, epsilon, top};
  auto scaled = detail::scaled_data(g, extras);
  std::optional<detail::Int> s_step, s_eps;
  if (scaled) {
    s_step = scaled->scaler.scale(step);
    auto e = scaled->scaler.scale(epsilon * Value(scaled->weight_scale));
    s_eps = e;
  }
  if (scaled && s_step && s_eps) {
    found = candidates<detail::Int>(std::move(scaled->data), axis, *s_step, *s_eps);
  } else {
    found = candidates<Value>(detail::exact_data(g), axis, step, epsilon);
  }

  for (const auto& index : found) {
    std::vector<Value> prices;
    for (auto k : index) prices.push_back(step * static_cast<unsigned long>(k));
    PriceVector p(std::move(prices));
    auto report = check_equilibrium(g, p, epsilon);
    if (!report.is_equilibrium()) {
      throw std::logic_error("integer scan and exact check disagree at " + p.str());
    }
    GridProfile profile;
    profile.prices = std::move(p);
    profile.verdict = report.verdict;
    for (const auto& s : report.sellers) profile.utilities.push_back(s.utility);
    profile.welfare = report.welfare;
    profile.worst_gain = report.worst_gain;
    if (!out.min_welfare || profile.welfare < *out.min_welfare) out.min_welfare = profile.welfare;
    if (!out.max_welfare || profile.welfare > *out.max_welfare) out.max_welfare = profile.welfare;
    out.equilibria.push_back(std::move(profile));
  }
  return out;
}

}  // namespace pricing
