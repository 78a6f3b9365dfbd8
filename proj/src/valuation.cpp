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

#include "pricing/valuation.hpp"

#include <map>
#include <type_traits>

#include "pricing/error.hpp"

namespace pricing {

Valuation Valuation::with_label(std::string label) const {
  return Valuation(n_, table_, std::move(label));
}

Valuation make_table(int n, std::vector<Value> values, std::string label) {
  if (n < 1 || n > kMaxItems) {
    throw Error(ErrorKind::kSizeLimit,
                "item count must be in [1, " + std::to_string(kMaxItems) + "], got " +
                    std::to_string(n));
  }
  const std::size_t size = std::size_t{1} << n;
  if (values.size() != size) {
    throw Error(ErrorKind::kSizeLimit, "table for n=" + std::to_string(n) + " needs " +
                                           std::to_string(size) + " entries, got " +
                                           std::to_string(values.size()));
  }
  for (auto& x : values) x.canonicalize();
  if (values[0] != 0) {
    throw Error(ErrorKind::kNonZeroEmptySet, "v({}) = " + to_string(values[0]));
  }
  auto table = std::make_shared<const std::vector<Value>>(std::move(values));
  Valuation v(n, std::move(table), std::move(label));
  if (auto w = find_monotonicity_violation(v)) {
    throw Error(ErrorKind::kNonMonotone, w->detail);
  }
  return v;
}

Value marginal(const Valuation& v, Subset t, Subset s) {
  if ((t & s) != 0) {
    throw Error(ErrorKind::kOverlappingSets,
                "marginal of " + format_subset(t) + " given " + format_subset(s));
  }
  if (!is_subset(t | s, v.items())) {
    throw Error(ErrorKind::kInvalidInput, "set outside the item universe");
  }
  return v(s | t) - v(s);
}

std::optional<ClassWitness> find_monotonicity_violation(const Valuation& v) {
  const Subset all = v.items();
  for (Subset s = 0; s <= all; ++s) {
    for (int i = 0; i < v.n(); ++i) {
      if (contains(s, i)) continue;
      const Subset t = s | singleton(i);
      if (v(s) > v(t)) {
        return ClassWitness{{s, t},
                            "v(" + format_subset(s) + ") = " + to_string(v(s)) + " > v(" +
                                format_subset(t) + ") = " + to_string(v(t))};
      }
    }
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedFamily, what);
}

void require_items(int n) {
  if (n < 1 || n > kMaxItems) malformed("item count out of range: " + std::to_string(n));
}

void require_nonnegative(const std::vector<Value>& xs, const char* what) {
  for (const auto& x : xs) {
    if (x < 0) malformed(std::string(what) + " must be non-negative");
  }
}

std::vector<Value> tabulate(int n, auto&& f) {
  std::vector<Value> values(std::size_t{1} << n);
  for (Subset s = 0; s < values.size(); ++s) values[s] = f(s);
  return values;
}

Value weight_sum(const std::vector<Value>& w, Subset s) {
  Value total = 0;
  for (int i : items_of(s)) total += w[static_cast<std::size_t>(i)];
  return total;
}

Valuation build_impl(const family::Bertrand& f) {
  require_items(f.n);
  if (f.c < 0) malformed("bertrand value must be non-negative");
  return make_table(f.n, tabulate(f.n, [&](Subset s) { return s ? f.c : Value(0); }),
                    "bertrand");
}

Valuation build_impl(const family::AllOrNothing& f) {
  require_items(f.n);
  if (f.c < 0) malformed("all-or-nothing value must be non-negative");
  const Subset all = full_set(f.n);
  return make_table(f.n, tabulate(f.n, [&](Subset s) { return s == all ? f.c : Value(0); }),
                    "all_or_nothing");
}

Valuation build_impl(const family::Xos& f) {
  if (f.clauses.empty()) malformed("xos needs at least one clause");
  const int n = static_cast<int>(f.clauses.front().size());
  require_items(n);
  for (const auto& clause : f.clauses) {
    if (static_cast<int>(clause.size()) != n) malformed("xos clauses differ in length");
    require_nonnegative(clause, "xos weights");
  }
  return make_table(n, tabulate(n, [&](Subset s) {
                      Value best = 0;
                      for (const auto& clause : f.clauses) best = max_value(best, weight_sum(clause, s));
                      return best;
                    }),
                    "xos");
}

Valuation build_impl(const family::BudgetedAdditive& f) {
  const int n = static_cast<int>(f.weights.size());
  require_items(n);
  require_nonnegative(f.weights, "budgeted-additive weights");
  if (f.cap < 0) malformed("budgeted-additive cap must be non-negative");
  return make_table(n, tabulate(n, [&](Subset s) { return min_value(f.cap, weight_sum(f.weights, s)); }),
                    "budgeted_additive");
}

Valuation build_impl(const family::Additive& f) {
  const int n = static_cast<int>(f.weights.size());
  require_items(n);
  require_nonnegative(f.weights, "additive weights");
  return make_table(n, tabulate(n, [&](Subset s) { return weight_sum(f.weights, s); }),
                    "additive");
}

Valuation build_impl(const family::Symmetric& f) {
  const int n = static_cast<int>(f.profile.size()) - 1;
  require_items(n);
  if (f.profile[0] != 0) malformed("symmetric profile must start at 0");
  for (std::size_t k = 1; k < f.profile.size(); ++k) {
    if (f.profile[k] < f.profile[k - 1]) {
      malformed("symmetric profile decreases at size " + std::to_string(k));
    }
  }
  return make_table(n, tabulate(n, [&](Subset s) {
                      return f.profile[static_cast<std::size_t>(cardinality(s))];
                    }),
                    "symmetric");
}

Valuation build_impl(const family::Coverage& f) {
  const int n = static_cast<int>(f.sets.size());
  require_items(n);
  std::map<std::string, std::size_t> index;
  for (const auto& set : f.sets) {
    for (const auto& e : set) index.emplace(e, 0);
  }
  std::size_t next = 0;
  for (auto& [name, id] : index) id = next++;
  if (index.size() > 64) malformed("coverage universe larger than 64 elements");
  std::vector<Value> weight(index.size(), Value(1));
  for (const auto& [name, w] : f.element_weights) {
    auto it = index.find(name);
    if (it == index.end()) malformed("weight for unknown element '" + name + "'");
    if (w < 0) malformed("coverage element weights must be non-negative");
    weight[it->second] = w;
  }
  std::vector<std::uint64_t> cover(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (const auto& e : f.sets[static_cast<std::size_t>(i)]) {
      cover[static_cast<std::size_t>(i)] |= std::uint64_t{1} << index.at(e);
    }
  }
  return make_table(n, tabulate(n, [&](Subset s) {
                      std::uint64_t covered = 0;
                      for (int i : items_of(s)) covered |= cover[static_cast<std::size_t>(i)];
                      Value total = 0;
                      for (std::size_t e = 0; e < weight.size(); ++e) {
                        if ((covered >> e) & 1u) total += weight[e];
                      }
                      return total;
                    }),
                    "coverage");
}

Valuation build_impl(const family::Harmonic& f) {
  require_items(f.n);
  if (f.eps < 0) malformed("harmonic eps must be non-negative");
  std::vector<Value> h(static_cast<std::size_t>(f.n) + 1);
  for (int k = 0; k <= f.n; ++k) h[static_cast<std::size_t>(k)] = harmonic_number(k);
  const Value single = 1 + f.eps;
  return make_table(f.n, tabulate(f.n, [&](Subset s) {
                      const int k = cardinality(s);
                      return k == 1 ? single : h[static_cast<std::size_t>(k)];
                    }),
                    "harmonic");
}

Valuation build_impl(const family::Table& f) { return make_table(f.n, f.values, "table"); }

}  // namespace

Valuation build(const FamilySpec& spec) {
  return std::visit(
      [](const auto& f) -> Valuation {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Table>) {
          return build_impl(f);
        } else {
          try {
            return build_impl(f);
          } catch (const Error& e) {
            if (e.kind() == ErrorKind::kNonMonotone || e.kind() == ErrorKind::kNonZeroEmptySet) {
              malformed(e.what());
            }
            throw;
          }
        }
      },
      spec);
}

std::string family_name(const FamilySpec& spec) {
  static constexpr const char* kNames[] = {"bertrand", "all_or_nothing", "xos",
                                           "budgeted_additive", "additive", "symmetric",
                                           "coverage", "harmonic", "table"};
  return kNames[spec.index()];
}

}  // namespace pricing
