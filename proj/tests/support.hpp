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

// Independent reference implementations and random instance generators for
// the tests. Nothing here calls the library's demand or best-response code.

#ifndef PRICING_TESTS_SUPPORT_HPP_
#define PRICING_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "pricing/demand.hpp"
#include "pricing/game.hpp"
#include "pricing/valuation.hpp"

namespace pricing {

// gtest printers.
inline void PrintTo(const PriceVector& p, std::ostream* os) { *os << p.str(); }

}  // namespace pricing

namespace pricing::testing {

using Rng = std::mt19937_64;

inline std::filesystem::path fixture(const std::string& name) {
#ifndef PRICING_FIXTURES_DIR
#define PRICING_FIXTURES_DIR "fixtures"
#endif
  const char* dir = std::getenv("PRICING_FIXTURES");
  return std::filesystem::path(dir ? dir : PRICING_FIXTURES_DIR) / (name + ".json");
}

inline std::vector<int> random_order(Rng& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// ---- naive demand -------------------------------------------------------

inline Value naive_utility(const Valuation& v, const std::vector<Value>& p, Subset s) {
  Value u = v(s);
  for (int i = 0; i < v.n(); ++i) {
    if (contains(s, i)) u -= p[static_cast<std::size_t>(i)];
  }
  return u;
}

inline std::vector<Subset> naive_demand(const Valuation& v, const std::vector<Value>& p,
                                        Subset blocked = 0) {
  std::optional<Value> best;
  std::vector<Subset> out;
  for (Subset s = 0; s <= v.items(); ++s) {
    if (s & blocked) continue;
    Value u = naive_utility(v, p, s);
    if (!best || u > *best) {
      best = u;
      out.clear();
    }
    if (u == *best) out.push_back(s);
  }
  return out;
}

// Lexicographic precedence straight from the definition: the first item of
// order on which the sets differ belongs to a.
inline bool lex_before(Subset a, Subset b, const std::vector<int>& order) {
  for (int i : order) {
    if (contains(a, i) != contains(b, i)) return contains(a, i);
  }
  return false;
}

inline Subset naive_lex_first(const std::vector<Subset>& sets, const std::vector<int>& order) {
  Subset best = sets.front();
  for (Subset s : sets) {
    if (lex_before(s, best, order)) best = s;
  }
  return best;
}

inline Subset naive_maximal_lex(const std::vector<Subset>& sets, const std::vector<int>& order) {
  std::vector<Subset> maximal;
  for (Subset s : sets) {
    bool dominated = std::any_of(sets.begin(), sets.end(),
                                 [&](Subset t) { return t != s && is_subset(s, t); });
    if (!dominated) maximal.push_back(s);
  }
  return naive_lex_first(maximal, order);
}

inline Subset naive_greedy(const Valuation& v, const std::vector<Value>& p,
                           const std::vector<int>& order) {
  Subset s = 0;
  for (;;) {
    std::optional<Value> best;
    int pick = -1;
    for (int i : order) {
      if (contains(s, i)) continue;
      Value g = v(s | singleton(i)) - v(s) - p[static_cast<std::size_t>(i)];
      if (!best || g > *best) {
        best = g;
        pick = i;
      }
    }
    if (pick < 0 || *best < 0) return s;
    s |= singleton(pick);
  }
}

inline Subset naive_choose(const Valuation& v, const std::vector<Value>& p,
                           const DecisionMapSpec& map) {
  const auto d = naive_demand(v, p);
  switch (map.kind) {
    case MapKind::kMaximalLex: return naive_maximal_lex(d, map.order.items());
    case MapKind::kLexFirst: return naive_lex_first(d, map.order.items());
    case MapKind::kGsGreedy: return naive_greedy(v, p, map.order.items());
  }
  return 0;
}

// ---- naive best response ------------------------------------------------

struct NaiveResponse {
  Value sup;
  bool attained = true;
};

inline Value naive_seller_utility(const GameSpec& g, const std::vector<Value>& p, int item) {
  Value u = 0;
  for (const auto& b : g.buyers) {
    if (contains(naive_choose(b.valuation, p, g.map), item)) {
      u += b.weight * (p[static_cast<std::size_t>(item)] - g.costs[static_cast<std::size_t>(item)]);
    }
  }
  return u;
}

// The buyer's choice only changes where two bundles' utilities cross, so the
// seller's utility is linear between consecutive crossing prices. The sup is
// the max over crossing points and left limits at them.
inline NaiveResponse naive_best_response(const GameSpec& g, const std::vector<Value>& prices,
                                         int item) {
  const Subset bit = singleton(item);
  std::set<Value> points = {Value(0), g.costs[static_cast<std::size_t>(item)]};
  std::vector<Value> p = prices;
  p[static_cast<std::size_t>(item)] = 0;
  for (const auto& b : g.buyers) {
    const Valuation& v = b.valuation;
    for (Subset s = 0; s <= v.items(); ++s) {
      if (!(s & bit)) continue;
      for (Subset t = 0; t <= v.items(); ++t) {
        if (t & bit) continue;
        Value x = naive_utility(v, p, s) - naive_utility(v, p, t);
        if (x > 0) points.insert(x);
      }
    }
  }
  std::vector<Value> sorted(points.begin(), points.end());
  sorted.push_back(sorted.back() + 1);
  NaiveResponse r;
  r.sup = 0;
  std::vector<Value> at;
  auto utility_at = [&](const Value& x) {
    p[static_cast<std::size_t>(item)] = x;
    return naive_seller_utility(g, p, item);
  };
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    at.push_back(utility_at(sorted[k]));
    r.sup = max_value(r.sup, at.back());
    if (k > 0) {
      // Left limit at sorted[k]: choices of the open interval, margin at the end.
      const Value mid = (sorted[k - 1] + sorted[k]) / 2;
      const Value u_mid = utility_at(mid);
      const Value margin_mid = mid - g.costs[static_cast<std::size_t>(item)];
      if (margin_mid != 0) {
        const Value weight = u_mid / margin_mid;
        r.sup = max_value(r.sup, weight * (sorted[k] - g.costs[static_cast<std::size_t>(item)]));
      }
    }
  }
  r.attained = std::find(at.begin(), at.end(), r.sup) != at.end() || r.sup == 0;
  return r;
}

// Exact equilibrium test from the naive best responses.
inline Value naive_worst_gain(const GameSpec& g, const std::vector<Value>& p) {
  Value worst = 0;
  for (int i = 0; i < g.n(); ++i) {
    const Value u = naive_seller_utility(g, p, i);
    worst = max_value(worst, naive_best_response(g, p, i).sup - u);
  }
  return worst;
}

// The two-condition characterization for one buyer and zero costs, evaluated
// at S = X(p) straight from its statement.
inline bool naive_lemma_holds(const Valuation& v, const std::vector<Value>& p, Subset s) {
  const Value us = naive_utility(v, p, s);
  for (int i = 0; i < v.n(); ++i) {
    if (contains(s, i)) {
      bool tie = false;
      for (Subset t = 0; t <= v.items() && !tie; ++t) {
        tie = !contains(t, i) && naive_utility(v, p, t) == us;
      }
      if (!tie) return false;
    } else {
      for (Subset t = 0; t <= v.items(); ++t) {
        if (contains(t, i) && naive_utility(v, p, t) + p[static_cast<std::size_t>(i)] > us) return false;
      }
    }
  }
  return true;
}

// Exhaustive check of the exchange property used for GS uniqueness: for
// disjoint A, B and j outside both with v(i | A + j) = 0 on B, every
// y = v(j | A) - x with x >= 0 and 0 <= y < v(B | A) is beaten by some
// v(i | A), i in B. Returns the number of configurations checked, or -1.
inline long technical_gs_check(const Valuation& v) {
  const Subset all = v.items();
  long configurations = 0;
  for (Subset a = 0; a <= all; ++a) {
    const Subset rest = all & ~a;
    for (Subset b = rest;; b = (b - 1) & rest) {
      if (b != 0) {
        for (int j : items_of(rest & ~b)) {
          bool dead = true;
          Value best = 0;
          for (int i : items_of(b)) {
            dead = dead && v(a | singleton(j) | singleton(i)) == v(a | singleton(j));
            best = max_value(best, v(a | singleton(i)) - v(a));
          }
          if (!dead) continue;
          const Value vj = v(a | singleton(j)) - v(a);
          const Value vb = v(a | b) - v(a);
          ++configurations;
          // Largest admissible y is vj when vj < vb; otherwise y ranges over [0, vb).
          if (vj < vb && !(vj < best)) return -1;
          if (vj >= vb && vb > 0 && best < vb) return -1;
        }
      }
      if (b == 0) break;
    }
  }
  return configurations;
}

// ---- random valuations --------------------------------------------------

// Monotone: v(S) = max_{i in S} v(S - i) + a random non-negative bump.
inline Valuation random_monotone(Rng& rng, int n, long max_bump = 3, long den = 1) {
  std::vector<Value> t(std::size_t{1} << n);
  for (Subset s = 1; s < t.size(); ++s) {
    Value base = 0;
    for (int i : items_of(s)) base = max_value(base, t[s & ~singleton(i)]);
    t[s] = base + make_fraction(uniform(rng, 0, max_bump), den);
  }
  return make_table(n, std::move(t), "random_monotone");
}

// Weighted coverage: each item covers a random subset of elements.
inline Valuation random_coverage(Rng& rng, int n, int elements, long max_weight, long den = 1) {
  std::vector<Value> w;
  for (int e = 0; e < elements; ++e) w.push_back(make_fraction(uniform(rng, 0, max_weight), den));
  std::vector<std::uint32_t> cover(static_cast<std::size_t>(n));
  for (auto& c : cover) c = static_cast<std::uint32_t>(uniform(rng, 0, (1L << elements) - 1));
  std::vector<Value> t(std::size_t{1} << n);
  for (Subset s = 0; s < t.size(); ++s) {
    std::uint32_t u = 0;
    for (int i : items_of(s)) u |= cover[static_cast<std::size_t>(i)];
    for (int e = 0; e < elements; ++e) {
      if (u >> e & 1u) t[s] += w[static_cast<std::size_t>(e)];
    }
  }
  return make_table(n, std::move(t), "random_coverage");
}

// OXS: items matched to unit-demand agents, v(S) = max weight matching.
inline Valuation random_oxs(Rng& rng, int n, int agents, long max_weight) {
  std::vector<std::vector<long>> w(static_cast<std::size_t>(agents), std::vector<long>(static_cast<std::size_t>(n)));
  for (auto& row : w) {
    for (auto& x : row) x = uniform(rng, 0, max_weight);
  }
  std::vector<Value> t(std::size_t{1} << n);
  for (Subset s = 0; s < t.size(); ++s) {
    // DP over agents: best[used items] for the first a agents.
    std::vector<long> best(t.size(), -1);
    best[0] = 0;
    for (int a = 0; a < agents; ++a) {
      auto next = best;
      for (Subset u = 0; u < t.size(); ++u) {
        if (best[u] < 0) continue;
        for (int i : items_of(s & ~u)) {
          const long cand = best[u] + w[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
          next[u | singleton(i)] = std::max(next[u | singleton(i)], cand);
        }
      }
      best = std::move(next);
    }
    t[s] = *std::max_element(best.begin(), best.end());
  }
  return make_table(n, std::move(t), "random_oxs");
}

// Symmetric with non-increasing increments.
inline Valuation random_symmetric_concave(Rng& rng, int n, long max_step) {
  std::vector<long> inc;
  for (int k = 0; k < n; ++k) inc.push_back(uniform(rng, 0, max_step));
  std::sort(inc.rbegin(), inc.rend());
  std::vector<Value> profile = {Value(0)};
  for (int k = 0; k < n; ++k) profile.push_back(profile.back() + inc[static_cast<std::size_t>(k)]);
  return build(family::Symmetric{profile}).with_label("random_symmetric");
}

inline Valuation random_gs(Rng& rng, int n) {
  if (uniform(rng, 0, 2) == 0) return random_symmetric_concave(rng, n, 4);
  return random_oxs(rng, n, static_cast<int>(uniform(rng, 1, 3)), 5);
}

inline std::vector<Value> random_prices(Rng& rng, int n, long hi, long den) {
  std::vector<Value> p;
  for (int i = 0; i < n; ++i) p.push_back(make_fraction(uniform(rng, 0, hi), den));
  return p;
}

// Definitional gross-substitutes check on sampled price pairs p <= p': every
// demanded S at p has a demanded S' at p' keeping S's unchanged-price items.
inline bool gs_by_sampling(const Valuation& v, Rng& rng, int pairs, long hi, long den) {
  for (int k = 0; k < pairs; ++k) {
    auto p = random_prices(rng, v.n(), hi, den);
    auto q = p;
    Subset same = 0;
    for (int i = 0; i < v.n(); ++i) {
      if (uniform(rng, 0, 1)) {
        q[static_cast<std::size_t>(i)] += make_fraction(uniform(rng, 1, hi), den);
      } else {
        same |= singleton(i);
      }
    }
    const auto dp = naive_demand(v, p);
    const auto dq = naive_demand(v, q);
    for (Subset s : dp) {
      const bool ok = std::any_of(dq.begin(), dq.end(), [&](Subset t) { return is_subset(s & same, t); });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace pricing::testing

#endif  // PRICING_TESTS_SUPPORT_HPP_
