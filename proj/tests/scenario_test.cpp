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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pricing/commands.hpp"
#include "pricing/constructions.hpp"
#include "pricing/dynamics.hpp"
#include "pricing/error.hpp"
#include "pricing/grid_scan.hpp"
#include "pricing/monopolist.hpp"
#include "pricing/scenario.hpp"
#include "support.hpp"

namespace pricing {
namespace {

namespace fs = std::filesystem;

Value q(long a, long b = 1) { return make_fraction(a, b); }

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no pricing::Error thrown";
  return ErrorKind::kInvalidInput;
}

std::vector<fs::path> fixtures() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(testing::fixture("x").parent_path())) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Json items_json(Subset s) { return Json(items_of(s)); }

Json str(const Value& v) { return to_string(v); }

// Recomputes one stored expectation from the scenario.
Json compute(const std::string& key, const Scenario& s) {
  const GameSpec g = build_game(s);
  const Valuation& v = g.valuation();
  const auto prices = [&] { return *s.prices; };
  if (key == "transferred") return prices_to_json(epsilon_transfer(v, prices(), *s.epsilon, g.map.order));
  if (key == "demand_at_prices") {
    auto d = decide(v, prices(), g.map);
    Json demanded = Json::array();
    for (Subset t : d.demanded) demanded.push_back(items_json(t));
    return {{"best_utility", str(d.best_utility)}, {"demanded", demanded}, {"chosen", items_json(*d.chosen)}};
  }
  if (key == "best_response_seller0" || key == "best_response_B") {
    auto br = best_response(g, key == "best_response_B" ? 1 : 0, prices());
    return {{"value", str(br.value)}, {"attained", br.attained}};
  }
  if (key == "pareto") return prices_to_json(pareto_equilibrium(v, g.map.order));
  if (key == "prediction") return prices_to_json(submodular_prediction(v).prices);
  if (key == "dynamics_outcome" || key == "dynamics_final") {
    auto t = best_response_dynamics(g, *s.p0, s.schedule, s.delta.value_or(q(1, 100)), s.max_steps.value_or(10000));
    if (key == "dynamics_outcome") return std::string(outcome_name(t.outcome));
    return prices_to_json(t.final_prices);
  }
  if (key == "exact_grid_equilibria") {
    return grid_equilibrium_scan(g, *s.step, Value(0), *s.cap).equilibria.size();
  }
  if (key == "cost_epsilon_prices") return prices_to_json(cost_epsilon_equilibrium(g, *s.epsilon));
  if (key == "utilities_at_prices") {
    Json out = Json::array();
    for (const auto& u : seller_utilities(g, prices())) out.push_back(str(u));
    return out;
  }
  if (key == "chosen_at_prices" || key == "chosen") return items_json(chosen_sets(g, prices()).front());
  if (key == "welfare") return str(welfare(g, prices()));
  if (key == "optimum") return str(local_search_welfare(v, g.costs, s.start_set.value_or(0)).optimum_welfare);
  if (key == "marginal_2_given_1") return str(item_marginal(v, 1, singleton(0)));
  if (key == "monopolist_revenue" || key == "revenue") return str(brute_force_monopolist(v).revenue);
  if (key == "poa") return str(v(v.items()) / brute_force_monopolist(v).welfare_min);
  if (key == "round_growth") return str(*rule_replay(s.rules, *s.p0, s.steps.value_or(50)).round_growth);
  if (key == "check_at_prices") {
    auto r = check_equilibrium(g, prices());
    const auto& worst = r.sellers[static_cast<std::size_t>(*r.worst_seller)];
    return {{"verdict", std::string(verdict_name(r.verdict))},
            {"deviation_price", str(worst.deviation_price)},
            {"gain", str(worst.gain)}};
  }
  if (key == "transfer_first" || key == "transfer_of_001") {
    const Value eps = parse_value(s.expect["transfer_eps"].get<std::string>());
    return prices_to_json(epsilon_transfer(v, s.equilibria.front(), eps, g.map.order));
  }
  if (key == "decide_half") return items_json(choose(v, PriceVector({q(1, 2), q(1, 2), q(1, 2)}), g.map));
  ADD_FAILURE() << "unknown expectation " << key;
  return nullptr;
}

TEST(Fixtures, StoredExpectationsHold) {
  int checked = 0;
  for (const auto& path : fixtures()) {
    if (path.stem() == "malformed_table") continue;
    auto s = parse_scenario(path);
    if (s.expect.is_null()) continue;
    for (const auto& [key, want] : s.expect.items()) {
      if (key == "transfer_eps") continue;
      EXPECT_EQ(compute(key, s), want) << path.stem() << " " << key;
      ++checked;
    }
  }
  EXPECT_GE(checked, 25);
}

TEST(Fixtures, StoredEquilibriaAreExact) {
  for (const auto& path : fixtures()) {
    if (path.stem() == "malformed_table") continue;
    auto s = parse_scenario(path);
    auto g = build_game(s);
    for (const auto& p : s.equilibria) {
      EXPECT_EQ(check_equilibrium(g, p).verdict, Verdict::kExactNE) << path.stem() << " " << p.str();
    }
  }
}

TEST(Fixtures, RoundTrip) {
  for (const auto& path : fixtures()) {
    if (path.stem() == "malformed_table") continue;
    auto s = parse_scenario(path);
    const std::string once = to_json(s).dump(2);
    const std::string twice = to_json(parse_scenario_text(once)).dump(2);
    EXPECT_EQ(once, twice) << path.stem();
  }
}

TEST(Fixtures, MalformedTableIsRejected) {
  try {
    parse_scenario(testing::fixture("malformed_table"));
    FAIL() << "accepted a non-monotone table";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidationError);
    EXPECT_NE(std::string(e.what()).find("NonMonotone"), std::string::npos);
  }
}

TEST(Scenario, ExactNumbers) {
  auto s = parse_scenario_text(R"({"valuation": {"type": "additive", "weights": [0.1, "1/3", 2e-1]},
                                   "prices": [0.15, "blocked", 1]})");
  const auto v = build(s.buyers.front().family);
  EXPECT_EQ(v(1), q(1, 10));
  EXPECT_EQ(v(2), q(1, 3));
  EXPECT_EQ(v(4), q(1, 5));
  EXPECT_EQ((*s.prices)[0], q(3, 20));
  EXPECT_TRUE(s.prices->blocked(1));
}

TEST(Scenario, Errors) {
  try {
    parse_scenario_text("{\n\"valuation\": {\"type\": \"additive\",\n \"weights\": [1,}\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    EXPECT_NE(std::string(e.what()).find("<input>:3:"), std::string::npos) << e.what();
  }
  try {
    parse_scenario_text(R"({"valuation": {"type": "additive", "weights": [1], "wieghts": 2}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    EXPECT_NE(std::string(e.what()).find("valuation.wieghts"), std::string::npos) << e.what();
  }
  EXPECT_EQ(error_kind([] { parse_scenario_text(R"({"valuation": {"type": "nope"}})"); }), ErrorKind::kParseError);
  EXPECT_EQ(error_kind([] { parse_scenario_text(R"({"valuation": {"type": "additive", "weights": [1]}, "costs": [1, 2]})"); }),
            ErrorKind::kValidationError);
  EXPECT_EQ(error_kind([] { parse_scenario_text(R"({"valuation": {"type": "additive", "weights": [-1]}})"); }),
            ErrorKind::kValidationError);
  EXPECT_EQ(error_kind([] { parse_scenario_text(R"({"description": "no game"})"); }), ErrorKind::kParseError);
}

TEST(Commands, EnvelopeAndExitCodes) {
  auto nash = parse_scenario(testing::fixture("nash_bargaining"));
  auto r = run_command("check-eq", nash, {});
  EXPECT_EQ(r.exit_code, kExitNegative);
  EXPECT_EQ(r.report["schema"], 1);
  EXPECT_EQ(r.report["command"], "check-eq");
  EXPECT_EQ(r.report["scenario"], "nash_bargaining");
  EXPECT_EQ(r.report["result"]["verdict"], "NotNE");
  EXPECT_EQ(r.csv.substr(0, r.csv.find('\n')), "profile,verdict,utilities,welfare,worst_gain");

  auto cov = parse_scenario(testing::fixture("coverage"));
  auto scan = run_command("grid-scan", cov, {});
  EXPECT_EQ(scan.exit_code, kExitOk);
  EXPECT_FALSE(scan.csv.empty());
  auto dyn = run_command("dynamics", cov, {});
  EXPECT_EQ(dyn.csv.substr(0, dyn.csv.find('\n')), "step,seller,old_price,new_price,prices,chosen,utilities");

  auto additive = parse_scenario(testing::fixture("additive"));
  auto transfer = run_command("transfer", additive, {});
  EXPECT_EQ(transfer.csv, "map,profile,verdict,utilities,welfare,worst_gain\n"
                          "maximal_lex,59/20;99/20,EpsNE,59/20;99/20,8,1/20\n"
                          "lex_first,59/20;99/20,EpsNE,59/20;99/20,8,1/20\n"
                          "gs_greedy,59/20;99/20,EpsNE,59/20;99/20,8,1/20\n");

  EXPECT_THROW(run_command("no-such-command", cov, {}), Error);
  for (const auto& name : command_names()) EXPECT_FALSE(name.empty());
}

TEST(Commands, OptionsOverrideScenario) {
  auto nash = parse_scenario(testing::fixture("nash_bargaining"));
  CommandOptions options;
  options.epsilon = q(5);
  auto r = run_command("check-eq", nash, options);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["result"]["verdict"], "EpsNE");
}

TEST(Commands, CsvRowsMatchHeader) {
  int tables = 0;
  for (const auto& path : fixtures()) {
    if (path.stem() == "malformed_table") continue;
    const auto s = parse_scenario(path);
    const Json doc = Json::parse(std::ifstream(path));
    for (const auto& c : doc.value("cli", Json::array())) {
      const std::string command = c["command"];
      if (!c["args"].empty()) continue;
      const auto r = run_command(command, s, {});
      if (r.csv.empty()) continue;
      ++tables;
      std::istringstream lines(r.csv);
      std::string line;
      std::getline(lines, line);
      const auto columns = std::count(line.begin(), line.end(), ',');
      while (std::getline(lines, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), columns) << path.stem() << " " << command;
      }
    }
  }
  EXPECT_GE(tables, 5);
}

}  // namespace
}  // namespace pricing
