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

// Command-line front end: pricing <command> --scenario FILE [flags].

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pricing/commands.hpp"
#include "pricing/error.hpp"
#include "pricing/scenario.hpp"

namespace {

std::optional<pricing::Value> value_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return pricing::parse_value(text);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pricing::Error(pricing::ErrorKind::kInvalidInput, "cannot write " + path.string());
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of combinatorial pricing games"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, epsilon, step, cap, delta;
  std::optional<std::uint64_t> seed, samples, max_steps, trials;
  std::string mode = "brute";

  const std::map<std::string, std::string> blurbs = {
      {"classify", "place each valuation in the class hierarchy"},
      {"demand", "demanded bundles and the map's choice at the scenario prices"},
      {"check-eq", "exact or epsilon equilibrium check of the scenario prices"},
      {"find-eq", "construct an equilibrium (Pareto point, or epsilon prices with costs)"},
      {"transfer", "move stored equilibria to every decision map"},
      {"cost-eq", "epsilon equilibrium and conditions for games with service costs"},
      {"dynamics", "sequential best-response dynamics from p0"},
      {"replay", "replay affine repricing rules"},
      {"certify-nonexistence", "grid certificate that no epsilon equilibrium exists"},
      {"monopolist", "revenue of a seller owning every item"},
      {"grid-scan", "all epsilon equilibria on a price grid"},
  };
  for (const auto& name : pricing::command_names()) {
    auto blurb = blurbs.find(name);
    CLI::App* sub = app.add_subcommand(name, blurb == blurbs.end() ? "" : blurb->second);
    sub->add_option("--scenario", scenario_path, "scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write the JSON report here; CSV goes beside it");
    sub->add_option("--epsilon", epsilon, "tolerance, e.g. 1/100 or 0.01");
    sub->add_option("--step", step, "grid step");
    sub->add_option("--cap", cap, "grid price cap");
    sub->add_option("--delta", delta, "undercut used when a best response is not attained");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--samples", samples, "repetition parameter s for sampling");
    sub->add_option("--max-steps", max_steps, "step budget for dynamics and replays");
    if (name == "demand") sub->add_option("--trials", trials, "also probe map properties");
    if (name == "monopolist") {
      sub->add_option("--mode", mode, "brute, sample or expectation")
          ->check(CLI::IsMember({"brute", "sample", "expectation"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pricing::kExitError;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    pricing::CommandOptions options;
    options.epsilon = value_flag(epsilon);
    options.step = value_flag(step);
    options.cap = value_flag(cap);
    options.delta = value_flag(delta);
    options.seed = seed;
    options.samples = samples;
    options.max_steps = max_steps;
    options.trials = trials;
    options.mode = mode;

    const pricing::Scenario scenario = pricing::parse_scenario(scenario_path);
    const pricing::CommandResult result = pricing::run_command(command, scenario, options);
    const std::string body = result.report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::filesystem::path out(out_path);
      write_file(out, body);
      if (!result.csv.empty()) write_file(std::filesystem::path(out).replace_extension(".csv"), result.csv);
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pricing::kExitError;
  }
}
