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

#ifndef PRICING_COMMANDS_HPP_
#define PRICING_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pricing/scenario.hpp"

namespace pricing {

// Flag values; each overrides the scenario field of the same name.
struct CommandOptions {
  std::optional<Value> epsilon;
  std::optional<Value> step;
  std::optional<Value> cap;
  std::optional<Value> delta;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> trials;
  std::string mode = "brute";  // monopolist: brute | sample | expectation
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

struct CommandResult {
  int exit_code = kExitOk;
  Json report;      // {"schema", "command", "scenario", "result"}
  std::string csv;  // empty when the command has no table
};

const std::vector<std::string>& command_names();

// Runs one subcommand. Library errors propagate as pricing::Error.
CommandResult run_command(const std::string& command, const Scenario& scenario,
                          const CommandOptions& options);

}  // namespace pricing

#endif  // PRICING_COMMANDS_HPP_
