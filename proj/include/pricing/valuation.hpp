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

#ifndef PRICING_VALUATION_HPP_
#define PRICING_VALUATION_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pricing/subset.hpp"
#include "pricing/value.hpp"

namespace pricing {

// Monotone set function v: 2^N -> Q+ with v(empty) = 0, stored as a full
// table indexed by Subset. Immutable; copies share the table.
class Valuation {
 public:
  int n() const { return n_; }
  Subset items() const { return full_set(n_); }
  const Value& operator()(Subset s) const { return (*table_)[s]; }
  std::span<const Value> table() const { return *table_; }
  const std::string& label() const { return label_; }
  Valuation with_label(std::string label) const;

 private:
  friend Valuation make_table(int n, std::vector<Value> values, std::string label);
  Valuation(int n, std::shared_ptr<const std::vector<Value>> table, std::string label)
      : n_(n), table_(std::move(table)), label_(std::move(label)) {}

  int n_ = 0;
  std::shared_ptr<const std::vector<Value>> table_;
  std::string label_;
};

// Validates size (1 <= n <= 20, 2^n entries), v(empty) = 0 and monotonicity.
// Errors: SizeLimit, NonZeroEmptySet, NonMonotone (message names S and T).
Valuation make_table(int n, std::vector<Value> values, std::string label = "table");

// v(T | S) = v(S u T) - v(S); throws OverlappingSets unless S and T are disjoint.
Value marginal(const Valuation& v, Subset t, Subset s);

// Marginal of a single item, v(i | S) with i not in S.
inline Value item_marginal(const Valuation& v, int item, Subset s) {
  return v(s | singleton(item)) - v(s);
}

// Constructors for the standard valuation families.
namespace family {

struct Bertrand { int n = 0; Value c; };           // v(S) = c for S non-empty
struct AllOrNothing { int n = 0; Value c; };       // v(N) = c, zero elsewhere
struct Xos { std::vector<std::vector<Value>> clauses; };  // max_t sum_{i in S} w_it
struct BudgetedAdditive { std::vector<Value> weights; Value cap; };  // min{cap, w(S)}
struct Additive { std::vector<Value> weights; };
struct Symmetric { std::vector<Value> profile; };  // v(S) = profile[|S|]
struct Coverage {                                  // v(S) = w(u_{i in S} Y_i)
  std::vector<std::vector<std::string>> sets;
  std::vector<std::pair<std::string, Value>> element_weights;  // default weight 1
};
struct Harmonic { int n = 0; Value eps; };         // 1 + eps on singletons, H_|S| otherwise
struct Table { int n = 0; std::vector<Value> values; };

}  // namespace family

using FamilySpec = std::variant<family::Bertrand, family::AllOrNothing, family::Xos,
                                family::BudgetedAdditive, family::Additive,
                                family::Symmetric, family::Coverage, family::Harmonic,
                                family::Table>;

// Errors: MalformedFamily for bad parameters, plus anything make_table raises.
Valuation build(const FamilySpec& spec);

// The canonical family name ("bertrand", "xos", ...), as used in scenario files.
std::string family_name(const FamilySpec& spec);

struct ClassWitness {
  std::vector<Subset> sets;
  std::string detail;
};

struct ClassReport {
  bool monotone = true;
  bool subadditive = true;
  bool submodular = true;
  bool gross_substitutes = true;
  std::optional<ClassWitness> monotone_witness;
  std::optional<ClassWitness> subadditive_witness;
  std::optional<ClassWitness> submodular_witness;
  std::optional<ClassWitness> gross_substitutes_witness;
};

// Individual class tests; each returns a witness of the first violation in
// enumeration order, or nullopt.
std::optional<ClassWitness> find_monotonicity_violation(const Valuation& v);
std::optional<ClassWitness> find_submodularity_violation(const Valuation& v);
std::optional<ClassWitness> find_subadditivity_violation(const Valuation& v);
// Triple-exchange test on top of submodularity.
std::optional<ClassWitness> find_gross_substitutes_violation(const Valuation& v);

inline bool is_submodular(const Valuation& v) { return !find_submodularity_violation(v); }

inline constexpr int kMaxClassifyItems = 16;

// Exhaustive classification into the hierarchy
// gross substitutes => submodular => subadditive => monotone.
// Throws SizeLimit for n > kMaxClassifyItems.
ClassReport classify(const Valuation& v);

}  // namespace pricing

#endif  // PRICING_VALUATION_HPP_
