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

#include "pricing/demand.hpp"

#include <random>

#include "pricing/detail/kernel.hpp"
#include "pricing/error.hpp"

namespace pricing {

PriceVector::PriceVector(std::vector<Value> prices, Subset blocked)
    : prices_(std::move(prices)), blocked_(blocked) {
  if (prices_.size() > static_cast<std::size_t>(kMaxItems)) {
    throw Error(ErrorKind::kSizeLimit, "too many prices");
  }
  if (!is_subset(blocked_, full_set(size()))) {
    throw Error(ErrorKind::kInvalidInput, "blocked item outside the price vector");
  }
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    prices_[i].canonicalize();
    if (contains(blocked_, static_cast<int>(i))) prices_[i] = 0;
    if (prices_[i] < 0) {
      throw Error(ErrorKind::kInvalidInput, "negative price for item " + std::to_string(i));
    }
  }
}

void PriceVector::set(int item, Value price) {
  if (price < 0) {
    throw Error(ErrorKind::kInvalidInput, "negative price for item " + std::to_string(item));
  }
  price.canonicalize();
  prices_.at(static_cast<std::size_t>(item)) = std::move(price);
  blocked_ &= ~singleton(item);
}

void PriceVector::block(int item) {
  prices_.at(static_cast<std::size_t>(item)) = 0;
  blocked_ |= singleton(item);
}

Value PriceVector::total(Subset s) const {
  Value sum = 0;
  for (int i : items_of(s & ~blocked_)) sum += prices_[static_cast<std::size_t>(i)];
  return sum;
}

std::string PriceVector::str() const {
  std::string out = "(";
  for (int i = 0; i < size(); ++i) {
    if (i) out += ", ";
    out += blocked(i) ? std::string("blocked") : to_string((*this)[i]);
  }
  return out + ")";
}

std::string_view map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::kMaximalLex: return "maximal_lex";
    case MapKind::kLexFirst: return "lex_first";
    case MapKind::kGsGreedy: return "gs_greedy";
  }
  return "unknown";
}

MapKind parse_map_kind(std::string_view name) {
  if (name == "maximal_lex") return MapKind::kMaximalLex;
  if (name == "lex_first") return MapKind::kLexFirst;
  if (name == "gs_greedy") return MapKind::kGsGreedy;
  throw Error(ErrorKind::kParseError, "unknown decision map kind '" + std::string(name) + "'");
}

namespace {

void check_sizes(const Valuation& v, const PriceVector& p) {
  if (p.size() != v.n()) {
    throw Error(ErrorKind::kInvalidInput, "price vector has " + std::to_string(p.size()) +
                                              " entries for " + std::to_string(v.n()) + " items");
  }
}

void check_map(const Valuation& v, const DecisionMapSpec& map) {
  if (map.order.size() != v.n()) {
    throw Error(ErrorKind::kInvalidInput, "decision map order does not cover the items");
  }
}

}  // namespace

DemandResult demand(const Valuation& v, const PriceVector& p) {
  check_sizes(v, p);
  std::vector<Value> paid, u;
  detail::fill_utilities<Value>(v.table(), p.values(), v.n(), paid, u);
  const Subset allowed = v.items() & ~p.blocked_mask();
  DemandResult result;
  result.best_utility = u[0];
  for (Subset s = allowed; s != 0; s = (s - 1) & allowed) {
    if (u[s] > result.best_utility) result.best_utility = u[s];
  }
  for (Subset s = 0; s <= v.items(); ++s) {
    if ((s & ~allowed) == 0 && u[s] == result.best_utility) result.demanded.push_back(s);
  }
  return result;
}

Subset choose(const Valuation& v, const PriceVector& p, const DecisionMapSpec& map) {
  check_sizes(v, p);
  check_map(v, map);
  std::vector<Value> paid, u;
  detail::fill_utilities<Value>(v.table(), p.values(), v.n(), paid, u);
  auto pick = detail::pick_set<Value>(v.table(), p.values(), p.blocked_mask(), v.n(), map.kind,
                                      map.order, u);
  if (!pick.demanded) detail::greedy_not_demanded(pick.chosen);
  return pick.chosen;
}

DemandResult decide(const Valuation& v, const PriceVector& p, const DecisionMapSpec& map) {
  DemandResult result = demand(v, p);
  const Subset chosen = choose(v, p, map);
  if (map.kind == MapKind::kMaximalLex) {
    for (Subset d : result.demanded) {
      if (d != chosen && is_subset(chosen, d)) {
        throw std::logic_error("maximal map chose " + format_subset(chosen) +
                               " below demanded " + format_subset(d));
      }
    }
  }
  result.chosen = chosen;
  return result;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  long long top;  // largest grid index for base prices
  int grid;

  Value grid_price(long long k) const { return make_fraction(static_cast<long>(k), grid); }

  long long index(long long hi) {
    return std::uniform_int_distribution<long long>(0, hi)(rng);
  }
};

bool record(PropertyCheck& check, bool ok, const std::string& detail) {
  ++check.trials;
  if (ok) {
    ++check.passed;
  } else if (!check.first_counterexample) {
    check.first_counterexample = detail;
  }
  return ok;
}

}  // namespace

PropertyReport probe_map_properties(const Valuation& v, const DecisionMapSpec& map,
                                    std::size_t trials, std::uint64_t rng_seed, int grid) {
  if (trials == 0 || grid <= 0) {
    throw Error(ErrorKind::kInvalidInput, "probe needs trials >= 1 and a positive grid");
  }
  check_map(v, map);
  const int n = v.n();
  Value scaled_top = v(v.items()) * grid;
  mpz_class top = scaled_top.get_num() / scaled_top.get_den();
  if (top > 1'000'000'000) top = 1'000'000'000;
  Sampler sampler{std::mt19937_64(rng_seed), std::max<long long>(1, top.get_si()), grid};

  PropertyReport report;
  auto try_choose = [&](const PriceVector& p) -> std::optional<Subset> {
    try {
      const Subset s = choose(v, p, map);
      record(report.demanded_membership, true, "");
      return s;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kGreedyNotDemanded) throw;
      record(report.demanded_membership, false, "at p=" + p.str() + ": " + e.what());
      return std::nullopt;
    }
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<Value> base(static_cast<std::size_t>(n));
    for (auto& x : base) x = sampler.grid_price(sampler.index(sampler.top));
    const PriceVector p(base);
    const auto chosen = try_choose(p);
    if (!chosen) continue;

    const DemandResult d = demand(v, p);
    bool maximal = true;
    for (Subset s : d.demanded) {
      if (s != *chosen && is_subset(*chosen, s)) maximal = false;
    }
    record(report.maximality, maximal,
           "at p=" + p.str() + " chose " + format_subset(*chosen) + " below a demanded superset");

    // Raise a single price.
    const int item = static_cast<int>(sampler.index(n - 1));
    PriceVector up = p;
    up.set(item, p[item] + sampler.grid_price(1 + sampler.index(sampler.top)));
    if (auto raised = try_choose(up)) {
      record(report.up_consistency, *raised == *chosen || !contains(*raised, item),
             "p=" + p.str() + " -> " + up.str() + ": " + format_subset(*chosen) + " became " +
                 format_subset(*raised));
    }

    // Raise a random subset of prices.
    PriceVector many = p;
    Subset unchanged = v.items();
    for (int i = 0; i < n; ++i) {
      if (sampler.index(1) == 1) {
        many.set(i, p[i] + sampler.grid_price(1 + sampler.index(sampler.top)));
        unchanged &= ~singleton(i);
      }
    }
    if (auto raised = try_choose(many)) {
      const Subset kept = *chosen & unchanged;
      record(report.gs_consistency, is_subset(kept, *raised),
             "p=" + p.str() + " -> " + many.str() + ": kept items " + format_subset(kept) +
                 " not all in " + format_subset(*raised));
    }
  }
  return report;
}

}  // namespace pricing
