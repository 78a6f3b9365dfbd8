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

#include "pricing/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pricing/constructions.hpp"
#include "pricing/dynamics.hpp"
#include "pricing/error.hpp"
#include "pricing/grid_scan.hpp"
#include "pricing/monopolist.hpp"
#include "pricing/report.hpp"

namespace pricing {

namespace {

struct Context {
  const Scenario& scenario;
  const CommandOptions& options;
  GameSpec game;

  Value epsilon(const Value& fallback) const {
    return options.epsilon.value_or(scenario.epsilon.value_or(fallback));
  }
  Value delta(const Value& fallback) const {
    return options.delta.value_or(scenario.delta.value_or(fallback));
  }
  std::uint64_t seed() const { return options.seed.value_or(scenario.seed.value_or(0)); }

  Value required(const std::optional<Value>& flag, const std::optional<Value>& field,
                 const char* name) const {
    if (flag) return *flag;
    if (field) return *field;
    throw Error(ErrorKind::kInvalidInput, std::string("missing --") + name);
  }

  // Default price cap: the largest v(N) over buyers.
  Value cap() const {
    if (options.cap) return *options.cap;
    if (scenario.cap) return *scenario.cap;
    Value top = 0;
    for (const auto& b : game.buyers) top = max_value(top, b.valuation(b.valuation.items()));
    return top;
  }

  const PriceVector& prices() const {
    if (!scenario.prices) throw Error(ErrorKind::kInvalidInput, "scenario has no prices");
    return *scenario.prices;
  }

  const Valuation& single_valuation() const {
    if (!game.single_buyer()) throw Error(ErrorKind::kInvalidInput, "command needs a single buyer");
    return game.valuation();
  }
};

struct CommandOutput {
  int exit_code = kExitOk;
  Json result;
  std::string csv;
};

CommandOutput cmd_classify(const Context& c) {
  CommandOutput out;
  Json buyers = Json::array();
  for (const auto& b : c.game.buyers) {
    Json j;
    j["label"] = b.valuation.label();
    j["n"] = b.valuation.n();
    j["weight"] = to_string(b.weight);
    j["class"] = to_json(classify(b.valuation));
    buyers.push_back(j);
  }
  out.result["buyers"] = buyers;
  return out;
}

CommandOutput cmd_demand(const Context& c) {
  CommandOutput out;
  const PriceVector& p = c.prices();
  out.result["prices"] = prices_to_json(p);
  out.result["map"] = std::string(map_kind_name(c.game.map.kind));
  Json buyers = Json::array();
  for (const auto& b : c.game.buyers) {
    Json j = to_json(decide(b.valuation, p, c.game.map));
    if (c.options.trials && *c.options.trials > 0) {
      j["properties"] = to_json(probe_map_properties(b.valuation, c.game.map, *c.options.trials, c.seed()));
    }
    buyers.push_back(j);
  }
  out.result["buyers"] = buyers;
  return out;
}

CommandOutput cmd_check_eq(const Context& c) {
  CommandOutput out;
  auto report = check_equilibrium(c.game, c.prices(), c.epsilon(Value(0)), c.delta(make_fraction(1, 1000)));
  out.result = to_json(report);
  out.csv = equilibrium_csv_header() + equilibrium_csv_row(report);
  if (!report.is_equilibrium()) out.exit_code = kExitNegative;
  return out;
}

CommandOutput cmd_find_eq(const Context& c) {
  CommandOutput out;
  const Valuation& v = c.single_valuation();
  if (c.game.zero_costs()) {
    const PriceVector p = pareto_equilibrium(v, c.game.map.order);
    auto report = check_equilibrium(c.game, p);
    out.result["method"] = "pareto";
    out.result["prices"] = prices_to_json(p);
    Value total = 0;
    for (const auto& x : p.values()) total += x;
    out.result["total"] = to_string(total);
    out.result["check"] = to_json(report);
    auto pareto = check_pareto(v, p);
    out.result["pareto"] = pareto.pareto;
    if (is_submodular(v)) {
      auto prediction = submodular_prediction(v);
      Json pred;
      pred["prices"] = prices_to_json(prediction.prices);
      pred["unpinned"] = prediction.unpinned;
      pred["verdict"] = std::string(verdict_name(prediction.report.verdict));
      out.result["submodular_prediction"] = pred;
    } else {
      out.result["submodular_prediction"] = nullptr;
    }
    if (report.verdict != Verdict::kExactNE) out.exit_code = kExitNegative;
  } else {
    const Value eps = c.epsilon(make_fraction(1, 10));
    const PriceVector p = cost_epsilon_equilibrium(c.game, eps);
    auto report = check_equilibrium(c.game, p, eps);
    out.result["method"] = "cost_epsilon";
    out.result["prices"] = prices_to_json(p);
    out.result["check"] = to_json(report);
    if (!report.is_equilibrium()) out.exit_code = kExitNegative;
  }
  return out;
}

CommandOutput cmd_transfer(const Context& c) {
  CommandOutput out;
  const Valuation& v = c.single_valuation();
  const Value eps = c.epsilon(make_fraction(1, 100));
  std::vector<PriceVector> profiles = c.scenario.equilibria;
  if (profiles.empty()) profiles.push_back(c.prices());
  const ItemOrder& order = c.game.map.order;
  const GameSpec base = basic_game(v, DecisionMapSpec{MapKind::kMaximalLex, order});
  Json rows = Json::array();
  out.csv = "map," + equilibrium_csv_header();
  for (const auto& p : profiles) {
    const PriceVector pe = epsilon_transfer(v, p, eps, order);
    const Value w = welfare(base, p);
    for (MapKind kind : {MapKind::kMaximalLex, MapKind::kLexFirst, MapKind::kGsGreedy}) {
      Json row;
      row["profile"] = prices_to_json(p);
      row["transferred"] = prices_to_json(pe);
      row["map"] = std::string(map_kind_name(kind));
      const GameSpec g = basic_game(v, DecisionMapSpec{kind, order});
      try {
        auto report = check_equilibrium(g, pe, eps);
        const bool same = report.welfare == w;
        row["verdict"] = std::string(verdict_name(report.verdict));
        row["welfare"] = to_string(report.welfare);
        row["welfare_preserved"] = same;
        row["passed"] = report.is_equilibrium() && same;
        if (!(report.is_equilibrium() && same)) out.exit_code = kExitNegative;
        std::string line = equilibrium_csv_row(report);
        out.csv += std::string(map_kind_name(kind)) + "," + line;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kGreedyNotDemanded) throw;
        row["verdict"] = nullptr;
        row["error"] = e.what();
        row["passed"] = false;
        out.exit_code = kExitNegative;
      }
      rows.push_back(row);
    }
  }
  out.result["epsilon"] = to_string(eps);
  out.result["welfare_reference"] = "maximal_lex";
  out.result["rows"] = rows;
  return out;
}

CommandOutput cmd_cost_eq(const Context& c) {
  CommandOutput out;
  const Valuation& v = c.single_valuation();
  const Value eps = c.epsilon(make_fraction(1, 10));
  const PriceVector p = cost_epsilon_equilibrium(c.game, eps);
  auto report = check_equilibrium(c.game, p, eps);
  out.result["epsilon"] = to_string(eps);
  out.result["prices"] = prices_to_json(p);
  out.result["check"] = to_json(report);
  out.result["conditions"] = to_json(cost_equilibrium_conditions(c.game, p));
  if (c.scenario.prices) {
    Json given;
    given["check"] = to_json(check_equilibrium(c.game, *c.scenario.prices));
    given["conditions"] = to_json(cost_equilibrium_conditions(c.game, *c.scenario.prices));
    out.result["given"] = given;
  }
  out.result["local_search"] = to_json(local_search_welfare(v, c.game.costs, c.scenario.start_set.value_or(0)));
  if (!report.is_equilibrium()) out.exit_code = kExitNegative;
  return out;
}

CommandOutput cmd_dynamics(const Context& c) {
  CommandOutput out;
  if (!c.scenario.p0) throw Error(ErrorKind::kInvalidInput, "scenario has no p0");
  const std::uint64_t max_steps = c.options.max_steps.value_or(c.scenario.max_steps.value_or(10000));
  auto trace = best_response_dynamics(c.game, *c.scenario.p0, c.scenario.schedule,
                                      c.delta(make_fraction(1, 100)), max_steps);
  out.result = to_json(trace);
  out.result["delta"] = to_string(c.delta(make_fraction(1, 100)));
  out.csv = trace_csv(trace);
  return out;
}

CommandOutput cmd_replay(const Context& c) {
  CommandOutput out;
  if (!c.scenario.p0) throw Error(ErrorKind::kInvalidInput, "scenario has no p0");
  const std::uint64_t steps = c.options.max_steps.value_or(c.scenario.steps.value_or(50));
  auto trace = rule_replay(c.scenario.rules, *c.scenario.p0, steps);
  out.result = to_json(trace);
  out.csv = trace_csv(trace);
  return out;
}

CommandOutput cmd_certify(const Context& c) {
  CommandOutput out;
  const Value eps = c.required(c.options.epsilon, c.scenario.epsilon, "epsilon");
  const Value step = c.required(c.options.step, c.scenario.step, "step");
  auto cert = nonexistence_certificate(c.game, eps, step, c.cap());
  out.result = to_json(cert);
  if (!cert.produced()) out.exit_code = kExitNegative;
  return out;
}

CommandOutput cmd_monopolist(const Context& c) {
  CommandOutput out;
  const Valuation& v = c.single_valuation();
  const Value bound = v(v.items()) / harmonic_number(v.n());
  out.result["mode"] = c.options.mode;
  out.result["bound"] = to_string(bound);
  if (c.options.mode == "brute") {
    auto r = brute_force_monopolist(v);
    out.result["best"] = to_json(r);
    out.result["poa"] = r.welfare_min == 0 ? Json(nullptr) : Json(to_string(v(v.items()) / r.welfare_min));
    if (r.revenue < bound) out.exit_code = kExitNegative;
  } else if (c.options.mode == "sample") {
    const std::uint64_t s = c.options.samples.value_or(c.scenario.samples.value_or(1));
    auto r = repeated_sample(v, s, c.seed());
    out.result["s"] = s;
    out.result["seed"] = c.seed();
    out.result["best"] = to_json(r);
  } else if (c.options.mode == "expectation") {
    const Value e = exact_sampler_expectation(v);
    out.result["expectation"] = to_string(e);
    out.result["identity_holds"] = e == bound;
    out.result["symmetrization"] = to_json(symmetrize(v));
    if (e != bound) out.exit_code = kExitNegative;
  } else {
    throw Error(ErrorKind::kInvalidInput, "unknown mode '" + c.options.mode + "'");
  }
  return out;
}

CommandOutput cmd_grid_scan(const Context& c) {
  CommandOutput out;
  const Value step = c.required(c.options.step, c.scenario.step, "step");
  auto r = grid_equilibrium_scan(c.game, step, c.epsilon(Value(0)), c.cap());
  out.result = to_json(r);
  out.csv = grid_csv(r);
  return out;
}

using Handler = std::function<CommandOutput(const Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"classify", cmd_classify},       {"demand", cmd_demand},
      {"check-eq", cmd_check_eq},       {"find-eq", cmd_find_eq},
      {"transfer", cmd_transfer},       {"cost-eq", cmd_cost_eq},
      {"dynamics", cmd_dynamics},       {"replay", cmd_replay},
      {"certify-nonexistence", cmd_certify}, {"monopolist", cmd_monopolist},
      {"grid-scan", cmd_grid_scan},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "classify", "demand",   "check-eq", "find-eq",   "transfer",  "cost-eq",
      "dynamics", "replay",   "certify-nonexistence",  "monopolist", "grid-scan"};
  return names;
}

CommandResult run_command(const std::string& command, const Scenario& scenario,
                          const CommandOptions& options) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw Error(ErrorKind::kInvalidInput, "unknown command '" + command + "'");
  Context context{scenario, options, build_game(scenario)};
  CommandOutput outcome = it->second(context);
  CommandResult result;
  result.exit_code = outcome.exit_code;
  result.report["schema"] = kReportSchema;
  result.report["command"] = command;
  result.report["scenario"] = scenario.name;
  result.report["result"] = std::move(outcome.result);
  result.csv = std::move(outcome.csv);
  return result;
}

}  // namespace pricing
