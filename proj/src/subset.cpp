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

#include "pricing/subset.hpp"

#include <numeric>

#include "pricing/error.hpp"

namespace pricing {

Subset subset_of(std::span<const int> items) {
  Subset s = 0;
  for (int i : items) {
    if (i < 0 || i >= kMaxItems) {
      throw Error(ErrorKind::kInvalidInput, "item id out of range: " + std::to_string(i));
    }
    s |= singleton(i);
  }
  return s;
}

std::vector<int> items_of(Subset s) {
  std::vector<int> items;
  while (s != 0) {
    items.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return items;
}

std::string format_subset(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i : items_of(s)) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

ItemOrder::ItemOrder(std::vector<int> order) : order_(std::move(order)) {
  const int n = size();
  if (n > kMaxItems) {
    throw Error(ErrorKind::kInvalidInput, "order longer than the item limit");
  }
  rank_.fill(-1);
  for (int r = 0; r < n; ++r) {
    const int item = order_[static_cast<std::size_t>(r)];
    if (item < 0 || item >= n || rank_[static_cast<std::size_t>(item)] != -1) {
      throw Error(ErrorKind::kInvalidInput, "order is not a permutation of 0..n-1");
    }
    rank_[static_cast<std::size_t>(item)] = r;
  }
}

ItemOrder ItemOrder::identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return ItemOrder(std::move(order));
}

bool ItemOrder::precedes(Subset a, Subset b) const {
  const Subset diff = a ^ b;
  if (diff == 0) return false;
  for (int item : order_) {
    if (contains(diff, item)) return contains(a, item);
  }
  return false;
}

}  // namespace pricing
