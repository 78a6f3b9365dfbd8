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

#ifndef PRICING_DETAIL_GAME_DATA_HPP_
#define PRICING_DETAIL_GAME_DATA_HPP_

#include <optional>

#include "pricing/detail/kernel.hpp"
#include "pricing/detail/scaled.hpp"
#include "pricing/game.hpp"

namespace pricing::detail {

GameData<Value> exact_data(const GameSpec& g);

// Integer image of the game and of every price in prices (same scale).
// nullopt when some magnitude does not fit.
struct ScaledGame {
  GameData<Int> data;
  Scaler scaler;          // money amounts
  mpz_class weight_scale;  // common denominator of the buyer weights
};
std::optional<ScaledGame> scaled_data(const GameSpec& g, std::span<const Value> prices);

// Throws MultiItemSeller unless every seller owns exactly one item.
void require_single_item_sellers(const GameSpec& g);

}  // namespace pricing::detail

#endif  // PRICING_DETAIL_GAME_DATA_HPP_
