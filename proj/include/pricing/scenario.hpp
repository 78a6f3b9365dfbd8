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

#ifndef PRICING_SCENARIO_HPP_
#define PRICING_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pricing/demand.hpp"
#include "pricing/dynamics.hpp"
#include "pricing/game.hpp"
#include "pricing/valuation.hpp"

namespace pricing {

using Json = nlohmann::ordered_json;

struct BuyerSpec {
  Value weight = 1;
  FamilySpec family;
};

struct NetworkSpec {
  std::vector<std::string> nodes;
  std::vector<NetworkEdge> edges;
};

// A scenario file: the game plus the parameters of the commands run on it.
// Exactly one of buyers (from "valuation" or "buyers") and network is set.
struct Scenario {
  std::string name;
  std::string description;
  std::vector<BuyerSpec> buyers;
  std::optional<NetworkSpec> network;
  std::vector<Value> costs;
  std::optional<DecisionMapSpec> map;
  std::vector<Subset> ownership;

  std::optional<PriceVector> prices;
  std::vector<PriceVector> equilibria;
  std::optional<PriceVector> p0;
  std::vector<AffineRule> rules;
  std::vector<int> schedule;
  std::optional<Subset> start_set;

  std::optional<Value> epsilon;
  std::optional<Value> step;
  std::optional<Value> cap;
  std::optional<Value> delta;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> steps;

  Json expect;  // carried through untouched; read by the fixture tests

  int n() const;
};

// Parses and validates. Numbers are read exactly: JSON numbers keep their
// decimal text, and strings "a/b" are accepted wherever a value is expected.
// Errors: ParseError (syntax, with line; structure, with field path),
// ValidationError (model constructors rejected the content).
Scenario parse_scenario_text(std::string_view text, const std::string& source = "<input>");
Scenario parse_scenario(const std::filesystem::path& path);

// Inverse of parsing; values are emitted as canonical strings.
Json to_json(const Scenario& s);

Json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const Json& j, const std::string& field = "valuation");

// The game described by the scenario (network scenarios expand via
// bertrand_network). Errors: ValidationError.
GameSpec build_game(const Scenario& s);

// Reads a JSON document with exact numbers (see parse_scenario_text).
Json parse_exact_json(std::string_view text, const std::string& source = "<input>");

Value value_from_json(const Json& j, const std::string& field);
PriceVector prices_from_json(const Json& j, const std::string& field);
Json prices_to_json(const PriceVector& p);

}  // namespace pricing

#endif  // PRICING_SCENARIO_HPP_
