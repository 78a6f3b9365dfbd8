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

#ifndef PRICING_DETAIL_KERNEL_HPP_
#define PRICING_DETAIL_KERNEL_HPP_

#include <algorithm>
#include <bit>
#include <span>
#include <vector>

#include "pricing/demand.hpp"
#include "pricing/error.hpp"
#include "pricing/subset.hpp"

// Demand and single-item best-response computations shared by the exact API
// (Num = Value) and the scaled-integer grid scanner (Num = __int128). Both
// instantiations execute the same comparisons, so verdicts agree bit for bit.
namespace pricing::detail {

template <class Num>
struct Pick {
  Subset chosen = 0;
  Num best{};
  bool demanded = true;  // chosen attains best
};

// Lexicographic key: S precedes T under the order iff key(S) > key(T).
inline Subset lex_key(Subset s, const ItemOrder& order) {
  const int n = order.size();
  Subset key = 0;
  while (s != 0) {
    const int i = std::countr_zero(s);
    key |= Subset{1} << (n - 1 - order.rank(i));
    s &= s - 1;
  }
  return key;
}

// u[S] = v(S) - p(S) for every S; entries touching blocked items are unused.
template <class Num>
void fill_utilities(std::span<const Num> table, std::span<const Num> prices, int n,
                    std::vector<Num>& paid, std::vector<Num>& u) {
  const std::size_t size = std::size_t{1} << n;
  paid.resize(size);
  u.resize(size);
  paid[0] = 0;
  u[0] = table[0];
  for (std::size_t s = 1; s < size; ++s) {
    const std::size_t rest = s & (s - 1);
    paid[s] = paid[rest] + prices[static_cast<std::size_t>(std::countr_zero(s))];
    u[s] = table[s] - paid[s];
  }
}

template <class Num>
Pick<Num> pick_set(std::span<const Num> table, std::span<const Num> prices, Subset blocked,
                   int n, MapKind kind, const ItemOrder& order, const std::vector<Num>& u) {
  const Subset allowed = full_set(n) & ~blocked;
  Pick<Num> result;
  // Best utility and the lexicographically first set attaining it. Under the
  // superset-first order that set is also inclusion-maximal, so MaximalLex
  // and LexFirst share this scan.
  bool have = false;
  Subset best_set = 0;
  Subset best_key = 0;
  for (Subset s = allowed;; s = (s - 1) & allowed) {
    if (!have || u[s] > result.best) {
      result.best = u[s];
      best_set = s;
      best_key = lex_key(s, order);
      have = true;
    } else if (u[s] == result.best) {
      const Subset key = lex_key(s, order);
      if (key > best_key) {
        best_set = s;
        best_key = key;
      }
    }
    if (s == 0) break;
  }
  if (kind != MapKind::kGsGreedy) {
    result.chosen = best_set;
    return result;
  }
  Subset s = 0;
  for (;;) {
    int best_item = -1;
    Num best_gain{};
    for (int item : order.items()) {
      if (contains(s, item) || contains(blocked, item)) continue;
      Num gain = table[s | singleton(item)] - table[s] - prices[static_cast<std::size_t>(item)];
      if (best_item < 0 || gain > best_gain) {
        best_item = item;
        best_gain = gain;
      }
    }
    if (best_item < 0 || best_gain < 0) break;
    s |= singleton(best_item);
  }
  result.chosen = s;
  result.demanded = (u[s] == result.best);
  return result;
}

template <class Num>
struct SellerEval {
  Num current{};    // utility at the loaded profile
  Num sup{};        // sup over own prices
  bool attained = true;
  bool has_threshold = false;
  Num threshold{};  // price realizing (or approached by) sup
  Num lower_threshold{};  // largest breakpoint below threshold (or 0)
};

template <class Num>
struct GameData {
  int n = 0;
  std::vector<std::vector<Num>> tables;
  std::vector<Num> weights;
  std::vector<Num> costs;
  MapKind kind = MapKind::kMaximalLex;
  ItemOrder order;
};

[[noreturn]] inline void greedy_not_demanded(Subset chosen) {
  throw Error(ErrorKind::kGreedyNotDemanded,
              "greedy picked " + format_subset(chosen) + ", which is not demanded");
}

template <class Num>
class GameKernel {
 public:
  explicit GameKernel(GameData<Num> data) : data_(std::move(data)) {
    const std::size_t m = data_.tables.size();
    utilities_.resize(m);
    chosen_.resize(m);
  }

  const GameData<Num>& data() const { return data_; }
  int buyers() const { return static_cast<int>(data_.tables.size()); }

  void load(std::span<const Num> prices) {
    prices_.assign(prices.begin(), prices.end());
    for (std::size_t b = 0; b < data_.tables.size(); ++b) {
      fill_utilities<Num>(data_.tables[b], prices_, data_.n, paid_, utilities_[b]);
      auto pick = pick_set<Num>(data_.tables[b], prices_, 0, data_.n, data_.kind,
                                data_.order, utilities_[b]);
      if (!pick.demanded) greedy_not_demanded(pick.chosen);
      chosen_[b] = pick.chosen;
    }
  }

  const std::vector<Subset>& chosen() const { return chosen_; }

  Num utility(int item) const {
    Num total = 0;
    const Num margin = prices_[static_cast<std::size_t>(item)] - data_.costs[static_cast<std::size_t>(item)];
    for (std::size_t b = 0; b < chosen_.size(); ++b) {
      if (contains(chosen_[b], item)) total += data_.weights[b] * margin;
    }
    return total;
  }

  // Breakpoint t_b of buyer b for item: the buyer keeps the item for own
  // prices below t_b and drops it above.
  Num threshold(std::size_t b, int item) const {
    const auto& u = utilities_[b];
    const Subset bit = singleton(item);
    bool have_in = false, have_out = false;
    Num best_in{}, best_out{};
    const std::size_t size = std::size_t{1} << data_.n;
    for (std::size_t s = 0; s < size; ++s) {
      if (s & bit) {
        if (!have_in || u[s] > best_in) { best_in = u[s]; have_in = true; }
      } else {
        if (!have_out || u[s] > best_out) { best_out = u[s]; have_out = true; }
      }
    }
    return best_in + prices_[static_cast<std::size_t>(item)] - best_out;
  }

  // Utility of item's seller if it alone moves to price x.
  Num deviation_utility(int item, const Num& x) {
    scratch_prices_ = prices_;
    scratch_prices_[static_cast<std::size_t>(item)] = x;
    Num total = 0;
    const Num margin = x - data_.costs[static_cast<std::size_t>(item)];
    for (std::size_t b = 0; b < data_.tables.size(); ++b) {
      fill_utilities<Num>(data_.tables[b], scratch_prices_, data_.n, paid_, scratch_u_);
      auto pick = pick_set<Num>(data_.tables[b], scratch_prices_, 0, data_.n, data_.kind,
                                data_.order, scratch_u_);
      if (!pick.demanded) greedy_not_demanded(pick.chosen);
      if (contains(pick.chosen, item)) total += data_.weights[b] * margin;
    }
    return total;
  }

  SellerEval<Num> evaluate(int item) {
    SellerEval<Num> eval;
    eval.current = utility(item);
    eval.sup = 0;
    const Num& cost = data_.costs[static_cast<std::size_t>(item)];
    // (threshold, weight) for breakpoints reachable with non-negative prices.
    breaks_.clear();
    for (std::size_t b = 0; b < data_.tables.size(); ++b) {
      Num t = threshold(b, item);
      if (t < 0) continue;
      breaks_.push_back({t, data_.weights[b]});
    }
    std::sort(breaks_.begin(), breaks_.end(),
              [](const auto& x, const auto& y) { return y.first < x.first; });
    // Walk breakpoints from the top, accumulating the weight of buyers kept
    // just below each one.
    limits_.clear();
    Num weight = 0;
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
      weight += breaks_[k].second;
      const bool last_of_value = k + 1 == breaks_.size() || breaks_[k + 1].first < breaks_[k].first;
      if (!last_of_value) continue;
      const Num& t = breaks_[k].first;
      if (t > cost) limits_.push_back({t, (t - cost) * weight});
    }
    for (const auto& [t, value] : limits_) {
      if (value > eval.sup) eval.sup = value;
    }
    if (eval.sup > 0) {
      eval.attained = false;
      // limits_ is in descending threshold order; prefer the lowest
      // threshold that attains the sup.
      for (auto it = limits_.rbegin(); it != limits_.rend(); ++it) {
        if (it->second != eval.sup) continue;
        if (!eval.has_threshold) {
          eval.threshold = it->first;
          eval.has_threshold = true;
        }
        if (deviation_utility(item, it->first) == eval.sup) {
          eval.threshold = it->first;
          eval.attained = true;
          break;
        }
      }
      eval.lower_threshold = 0;
      for (const auto& [t, w] : breaks_) {
        if (t < eval.threshold && eval.lower_threshold < t) eval.lower_threshold = t;
      }
    }
    return eval;
  }

 private:
  GameData<Num> data_;
  std::vector<Num> prices_;
  std::vector<std::vector<Num>> utilities_;
  std::vector<Subset> chosen_;
  std::vector<Num> paid_, scratch_u_, scratch_prices_;
  std::vector<std::pair<Num, Num>> breaks_;
  std::vector<std::pair<Num, Num>> limits_;
};

}  // namespace pricing::detail

#endif  // PRICING_DETAIL_KERNEL_HPP_
