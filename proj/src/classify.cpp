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

#include <string>

#include "pricing/detail/scaled.hpp"
#include "pricing/error.hpp"
#include "pricing/valuation.hpp"

namespace pricing {
namespace {

// The searches below only compare sums of table entries, so they run
// unchanged on the exact table or on an integer rescaling of it.

template <class Num>
std::optional<ClassWitness> submodularity_search(const std::vector<Num>& v, int n,
                                                 const Valuation& exact) {
  const Subset all = full_set(n);
  for (Subset s = 0; s <= all; ++s) {
    for (int i = 0; i < n; ++i) {
      if (contains(s, i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (contains(s, j)) continue;
        const Subset si = s | singleton(i);
        const Subset sj = s | singleton(j);
        const Subset sij = si | sj;
        if (v[si] + v[sj] < v[sij] + v[s]) {
          return ClassWitness{
              {s, si, singleton(j)},
              "v(" + std::to_string(j) + "|" + format_subset(s) + ") = " +
                  to_string(exact(sj) - exact(s)) + " < " + to_string(exact(sij) - exact(si)) +
                  " = v(" + std::to_string(j) + "|" + format_subset(si) + ")"};
        }
      }
    }
  }
  return std::nullopt;
}

template <class Num>
std::optional<ClassWitness> subadditivity_search(const std::vector<Num>& v, int n,
                                                 const Valuation& exact) {
  const Subset all = full_set(n);
  for (Subset s = 1; s <= all; ++s) {
    const Subset rest = all & ~s;
    for (Subset t = rest; t != 0; t = (t - 1) & rest) {
      if (v[s | t] > v[s] + v[t]) {
        return ClassWitness{{s, t},
                            "v(" + format_subset(s | t) + ") = " + to_string(exact(s | t)) +
                                " > v(" + format_subset(s) + ") + v(" + format_subset(t) +
                                ") = " + to_string(exact(s) + exact(t))};
      }
    }
  }
  return std::nullopt;
}

template <class Num>
std::optional<ClassWitness> triple_exchange_search(const std::vector<Num>& v, int n) {
  const Subset all = full_set(n);
  for (Subset s = 0; s <= all; ++s) {
    for (int a = 0; a < n; ++a) {
      if (contains(s, a)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (contains(s, b)) continue;
        for (int c = b + 1; c < n; ++c) {
          if (contains(s, c)) continue;
          const Subset sa = s | singleton(a), sb = s | singleton(b), sc = s | singleton(c);
          const Num ab_c = v[sa | sb] + v[sc];
          const Num ac_b = v[sa | sc] + v[sb];
          const Num bc_a = v[sb | sc] + v[sa];
          // The maximum of the three pairings must be attained at least twice.
          const Num* sums[3] = {&ab_c, &ac_b, &bc_a};
          const int pair_items[3][3] = {{a, b, c}, {a, c, b}, {b, c, a}};
          for (int k = 0; k < 3; ++k) {
            const Num& other1 = *sums[(k + 1) % 3];
            const Num& other2 = *sums[(k + 2) % 3];
            const Num& best_other = other1 < other2 ? other2 : other1;
            if (*sums[k] > best_other) {
              const auto& p = pair_items[k];
              return ClassWitness{
                  {s, singleton(p[0]) | singleton(p[1]), singleton(p[2])},
                  "triple exchange fails at S=" + format_subset(s) + ": v(S+" +
                      std::to_string(p[0]) + "," + std::to_string(p[1]) + ") + v(S+" +
                      std::to_string(p[2]) + ") exceeds both alternative pairings"};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

template <class F>
auto with_table(const Valuation& v, F&& f) {
  detail::Scaler scaler;
  scaler.include(v.table());
  // Sums of up to two entries must stay inside the 128-bit range; kLimit keeps
  // ample headroom.
  if (auto ints = scaler.scale(v.table())) return f(*ints);
  std::vector<Value> exact(v.table().begin(), v.table().end());
  return f(exact);
}

}  // namespace

std::optional<ClassWitness> find_submodularity_violation(const Valuation& v) {
  return with_table(v, [&](const auto& t) { return submodularity_search(t, v.n(), v); });
}

std::optional<ClassWitness> find_subadditivity_violation(const Valuation& v) {
  return with_table(v, [&](const auto& t) { return subadditivity_search(t, v.n(), v); });
}

std::optional<ClassWitness> find_gross_substitutes_violation(const Valuation& v) {
  if (auto w = find_submodularity_violation(v)) return w;
  return with_table(v, [&](const auto& t) { return triple_exchange_search(t, v.n()); });
}

ClassReport classify(const Valuation& v) {
  if (v.n() > kMaxClassifyItems) {
    throw Error(ErrorKind::kSizeLimit, "classify supports n <= " +
                                           std::to_string(kMaxClassifyItems));
  }
  ClassReport report;
  report.monotone_witness = find_monotonicity_violation(v);
  report.monotone = !report.monotone_witness;
  report.submodular_witness = find_submodularity_violation(v);
  report.submodular = report.monotone && !report.submodular_witness;
  if (report.submodular) {
    // Submodular with v(empty) = 0 implies subadditive.
    report.subadditive = true;
  } else {
    report.subadditive_witness = find_subadditivity_violation(v);
    report.subadditive = report.monotone && !report.subadditive_witness;
  }
  if (report.submodular) {
    report.gross_substitutes_witness =
        with_table(v, [&](const auto& t) { return triple_exchange_search(t, v.n()); });
    report.gross_substitutes = !report.gross_substitutes_witness;
  } else {
    report.gross_substitutes = false;
    report.gross_substitutes_witness =
        ClassWitness{report.submodular_witness ? report.submodular_witness->sets
                                               : std::vector<Subset>{},
                     "not submodular"};
  }
  return report;
}

}  // namespace pricing
