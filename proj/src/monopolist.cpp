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

#include "pricing/monopolist.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pricing/detail/kernel.hpp"
#include "pricing/error.hpp"

namespace pricing {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

std::uint64_t lcm_upto(int n) {
  std::uint64_t l = 1;
  for (int k = 2; k <= n; ++k) l = std::lcm(l, static_cast<std::uint64_t>(k));
  return l;
}

Subset draw_set(int n, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  // P(k) proportional to L / k with L = lcm(1..n), i.e. to 1 / (k H_n).
  const std::uint64_t l = lcm_upto(n);
  std::uint64_t total = 0;
  for (int k = 1; k <= n; ++k) total += l / static_cast<std::uint64_t>(k);
  std::uint64_t x = draw_below(rng, total);
  int size = 1;
  for (;; ++size) {
    const std::uint64_t w = l / static_cast<std::uint64_t>(size);
    if (x < w) break;
    x -= w;
  }
  std::vector<int> items(static_cast<std::size_t>(n));
  std::iota(items.begin(), items.end(), 0);
  Subset s = 0;
  for (int i = 0; i < size; ++i) {
    const auto j = static_cast<std::size_t>(i) + draw_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(items[static_cast<std::size_t>(i)], items[j]);
    s |= singleton(items[static_cast<std::size_t>(i)]);
  }
  return s;
}

MonopolistResult result_for(const Valuation& v, Subset s) {
  MonopolistResult out;
  out.set = s;
  std::vector<Value> prices(static_cast<std::size_t>(v.n()), Value(0));
  Subset blocked = v.items() & ~s;
  out.revenue = 0;
  for (int i : items_of(s)) {
    prices[static_cast<std::size_t>(i)] = item_marginal(v, i, s & ~singleton(i));
    out.revenue += prices[static_cast<std::size_t>(i)];
  }
  out.prices = PriceVector(std::move(prices), blocked);
  out.realized = choose(v, out.prices, DecisionMapSpec::maximal_lex(v.n())) == s;
  out.welfare = v(s);
  out.welfare_min = out.welfare;
  out.welfare_max = out.welfare;
  return out;
}

void require_enumerable(const Valuation& v) {
  if (v.n() > kMaxEnumerationItems) {
    throw Error(ErrorKind::kSizeLimit, "enumeration is limited to n <= " +
                                           std::to_string(kMaxEnumerationItems));
  }
}

}  // namespace

Value revenue_of_set(const Valuation& v, Subset s) {
  if (!is_subset(s, v.items())) throw Error(ErrorKind::kInvalidInput, "set out of range");
  Value r = 0;
  for (int i : items_of(s)) r += item_marginal(v, i, s & ~singleton(i));
  return r;
}

MonopolistResult brute_force_monopolist(const Valuation& v) {
  const Subset all = v.items();
  const ItemOrder order = ItemOrder::identity(v.n());
  std::vector<Value> revenue(std::size_t{1} << v.n());
  std::optional<Value> best;
  Subset best_set = 0;
  for (Subset s = 0; s <= all; ++s) {
    Value r = 0;
    for (Subset rest = s; rest; rest &= rest - 1) {
      const Subset bit = rest & (~rest + 1);
      r += v(s) - v(s & ~bit);
    }
    if (!best || r > *best ||
        (r == *best && detail::lex_key(s, order) > detail::lex_key(best_set, order))) {
      best = r;
      best_set = s;
    }
    revenue[s] = std::move(r);
  }
  MonopolistResult out = result_for(v, best_set);
  for (Subset s = 0; s <= all; ++s) {
    if (revenue[s] != *best) continue;
    if (v(s) < out.welfare_min) out.welfare_min = v(s);
    if (v(s) > out.welfare_max) out.welfare_max = v(s);
  }
  return out;
}

MonopolistResult harmonic_sample(const Valuation& v, std::uint64_t seed) {
  MonopolistResult out = result_for(v, draw_set(v.n(), seed, 0));
  out.samples_used = 1;
  return out;
}

std::uint64_t sample_count(int n, std::uint64_t s) {
  Value x = Value(static_cast<unsigned long>(s)) * harmonic_number(n);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c.get_ui();
}

MonopolistResult repeated_sample(const Valuation& v, std::uint64_t s, std::uint64_t seed) {
  if (s < 1) throw Error(ErrorKind::kInvalidInput, "s must be at least 1");
  const std::uint64_t draws = sample_count(v.n(), s);
  Subset best_set = 0;
  std::optional<Value> best;
  for (std::uint64_t j = 0; j < draws; ++j) {
    const Subset set = draw_set(v.n(), seed, j);
    Value r = revenue_of_set(v, set);
    if (!best || r > *best) {
      best = std::move(r);
      best_set = set;
    }
  }
  MonopolistResult out = result_for(v, best_set);
  out.samples_used = draws;
  return out;
}

namespace {

// Per size k: sum over |S| = k of f(S), and the count C(n, k).
template <class F>
std::vector<Value> sums_by_size(const Valuation& v, F&& f) {
  std::vector<Value> sum(static_cast<std::size_t>(v.n()) + 1, Value(0));
  for (Subset s = 0; s <= v.items(); ++s) sum[static_cast<std::size_t>(cardinality(s))] += f(s);
  return sum;
}

Value binomial(int n, int k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Value(c);
}

}  // namespace

Value exact_sampler_expectation(const Valuation& v) {
  require_enumerable(v);
  const int n = v.n();
  auto sums = sums_by_size(v, [&](Subset s) {
    Value r = 0;
    for (int i : items_of(s)) r += v(s) - v(s & ~singleton(i));
    return r;
  });
  const Value h = harmonic_number(n);
  Value e = 0;
  for (int k = 1; k <= n; ++k) {
    e += sums[static_cast<std::size_t>(k)] / (binomial(n, k) * k * h);
  }
  return e;
}

SymmetrizationProfile symmetrize(const Valuation& v) {
  require_enumerable(v);
  const int n = v.n();
  auto sums = sums_by_size(v, [&](Subset s) { return v(s); });
  SymmetrizationProfile out;
  out.deltas.push_back(Value(0));
  for (int k = 0; k <= n; ++k) {
    out.averages.push_back(sums[static_cast<std::size_t>(k)] / binomial(n, k));
    if (k == 0) continue;
    out.deltas.push_back(out.averages[static_cast<std::size_t>(k)] -
                         out.averages[static_cast<std::size_t>(k) - 1]);
    const Value score = out.deltas.back() * k;
    if (out.best_k == 0 || score > out.best_value) {
      out.best_k = k;
      out.best_value = score;
    }
  }
  return out;
}

}  // namespace pricing
