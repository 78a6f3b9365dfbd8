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

#ifndef PRICING_SUBSET_HPP_
#define PRICING_SUBSET_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pricing {

// Bitmask over items: item i <-> bit i.
using Subset = std::uint32_t;

inline constexpr int kMaxItems = 20;

constexpr Subset singleton(int item) { return Subset{1} << item; }
constexpr Subset full_set(int n) { return n == 0 ? 0 : (Subset{1} << n) - 1; }
constexpr bool contains(Subset s, int item) { return (s >> item) & 1u; }
constexpr bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline int cardinality(Subset s) { return std::popcount(s); }

Subset subset_of(std::span<const int> items);
std::vector<int> items_of(Subset s);

// "{0,2,5}" with 0-based item ids.
std::string format_subset(Subset s);

// Priority order used by every lexicographic tie-break. Set S precedes T iff
// the highest-priority item in the symmetric difference belongs to S; a strict
// superset therefore always precedes its subsets.
class ItemOrder {
 public:
  ItemOrder() = default;
  // Throws InvalidInput unless order is a permutation of 0..n-1.
  explicit ItemOrder(std::vector<int> order);
  static ItemOrder identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& items() const { return order_; }
  int rank(int item) const { return rank_[static_cast<std::size_t>(item)]; }
  bool precedes(Subset a, Subset b) const;

  bool operator==(const ItemOrder& other) const { return order_ == other.order_; }

 private:
  std::vector<int> order_;
  std::array<int, kMaxItems> rank_{};
};

}  // namespace pricing

#endif  // PRICING_SUBSET_HPP_
