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

#include "pricing/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "pricing/error.hpp"

namespace pricing {

namespace {

// DOM builder that keeps the text of floating-point numbers so they can be
// read as exact decimals.
class ExactDomParser : public nlohmann::detail::json_sax_dom_parser<Json> {
 public:
  using Base = nlohmann::detail::json_sax_dom_parser<Json>;
  using Base::Base;

  bool number_float(double /*unused*/, const std::string& text) {
    std::string copy = text;
    return Base::string(copy);
  }
};

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kParseError, field + ": " + what);
}

std::string index_field(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

std::string key_field(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

const Json& require(const Json& obj, const std::string& key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(key_field(field, key), "missing");
  return *it;
}

const Json& require_array(const Json& j, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array");
  return j;
}

void require_object(const Json& j, const std::string& field) {
  if (!j.is_object()) parse_fail(field, "expected an object");
}

void reject_unknown(const Json& obj, std::initializer_list<std::string_view> known,
                    const std::string& field) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      parse_fail(key_field(field, key), "unknown key");
    }
  }
}

long long int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) parse_fail(field, "expected an integer");
  return j.get<long long>();
}

int small_int(const Json& j, const std::string& field, long long lo, long long hi) {
  const long long x = int_from_json(j, field);
  if (x < lo || x > hi) {
    parse_fail(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

std::uint64_t u64_from_json(const Json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  parse_fail(field, "expected a non-negative integer");
}

std::string string_from_json(const Json& j, const std::string& field) {
  if (!j.is_string()) parse_fail(field, "expected a string");
  return j.get<std::string>();
}

std::vector<Value> values_from_json(const Json& j, const std::string& field) {
  require_array(j, field);
  std::vector<Value> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(value_from_json(j[i], index_field(field, i)));
  return out;
}

Json values_to_json(const std::vector<Value>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

Subset subset_from_json(const Json& j, const std::string& field) {
  require_array(j, field);
  Subset s = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int item = small_int(j[i], index_field(field, i), 0, kMaxItems - 1);
    if (contains(s, item)) parse_fail(index_field(field, i), "repeated item");
    s |= singleton(item);
  }
  return s;
}

Json subset_to_json(Subset s) {
  Json out = Json::array();
  for (int i : items_of(s)) out.push_back(i);
  return out;
}

DecisionMapSpec map_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, {"kind", "order"}, field);
  DecisionMapSpec map;
  const std::string kind_field = key_field(field, "kind");
  try {
    map.kind = parse_map_kind(string_from_json(require(j, "kind", field), kind_field));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kParseError) throw;
    parse_fail(kind_field, "unknown decision map kind");
  }
  if (auto it = j.find("order"); it != j.end()) {
    const std::string order_field = key_field(field, "order");
    require_array(*it, order_field);
    std::vector<int> order;
    for (std::size_t i = 0; i < it->size(); ++i) {
      order.push_back(small_int((*it)[i], index_field(order_field, i), 0, kMaxItems - 1));
    }
    try {
      map.order = ItemOrder(std::move(order));
    } catch (const Error& e) {
      parse_fail(order_field, "not a permutation");
    }
  }
  return map;
}

Json map_to_json(const DecisionMapSpec& map) {
  Json out;
  out["kind"] = std::string(map_kind_name(map.kind));
  out["order"] = map.order.items();
  return out;
}

std::vector<std::vector<Value>> matrix_from_json(const Json& j, const std::string& field) {
  require_array(j, field);
  std::vector<std::vector<Value>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(values_from_json(j[i], index_field(field, i)));
  return out;
}

struct FamilyReader {
  const Json& j;
  const std::string& field;

  int n() const { return small_int(require(j, "n", field), key_field(field, "n"), 1, kMaxItems); }
  Value value(const std::string& key) const {
    return value_from_json(require(j, key, field), key_field(field, key));
  }
  std::vector<Value> values(const std::string& key) const {
    return values_from_json(require(j, key, field), key_field(field, key));
  }
};

}  // namespace

Json parse_exact_json(std::string_view text, const std::string& source) {
  Json root;
  ExactDomParser sax(root, true);
  try {
    Json::sax_parse(text, &sax);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    throw Error(ErrorKind::kParseError, source + ":" + std::to_string(line) + ": malformed JSON");
  }
  return root;
}

Value value_from_json(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_value(j.get<std::string>());
    if (j.is_number_unsigned()) return parse_value(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return parse_value(std::to_string(j.get<long long>()));
  } catch (const Error& e) {
    parse_fail(field, "not an exact number");
  }
  parse_fail(field, "expected a number or an \"a/b\" string");
}

PriceVector prices_from_json(const Json& j, const std::string& field) {
  require_array(j, field);
  std::vector<Value> prices;
  Subset blocked = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string() && j[i].get<std::string>() == "blocked") {
      blocked |= singleton(static_cast<int>(i));
      prices.emplace_back(0);
      continue;
    }
    prices.push_back(value_from_json(j[i], index_field(field, i)));
    if (prices.back() < 0) parse_fail(index_field(field, i), "negative price");
  }
  if (prices.size() > static_cast<std::size_t>(kMaxItems)) parse_fail(field, "too many prices");
  return PriceVector(std::move(prices), blocked);
}

Json prices_to_json(const PriceVector& p) {
  Json out = Json::array();
  for (int i = 0; i < p.size(); ++i) {
    out.push_back(p.blocked(i) ? std::string("blocked") : to_string(p[i]));
  }
  return out;
}

FamilySpec family_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  const std::string type = string_from_json(require(j, "type", field), key_field(field, "type"));
  FamilyReader r{j, field};
  if (type == "bertrand") {
    reject_unknown(j, {"type", "n", "c"}, field);
    return family::Bertrand{r.n(), r.value("c")};
  }
  if (type == "all_or_nothing") {
    reject_unknown(j, {"type", "n", "c"}, field);
    return family::AllOrNothing{r.n(), r.value("c")};
  }
  if (type == "xos") {
    reject_unknown(j, {"type", "clauses"}, field);
    return family::Xos{matrix_from_json(require(j, "clauses", field), key_field(field, "clauses"))};
  }
  if (type == "budgeted_additive") {
    reject_unknown(j, {"type", "weights", "cap"}, field);
    return family::BudgetedAdditive{r.values("weights"), r.value("cap")};
  }
  if (type == "additive") {
    reject_unknown(j, {"type", "weights"}, field);
    return family::Additive{r.values("weights")};
  }
  if (type == "symmetric") {
    reject_unknown(j, {"type", "profile"}, field);
    return family::Symmetric{r.values("profile")};
  }
  if (type == "coverage") {
    reject_unknown(j, {"type", "sets", "weights"}, field);
    family::Coverage c;
    const std::string sets_field = key_field(field, "sets");
    const Json& sets = require_array(require(j, "sets", field), sets_field);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::string f = index_field(sets_field, i);
      require_array(sets[i], f);
      std::vector<std::string> elements;
      for (std::size_t e = 0; e < sets[i].size(); ++e) {
        elements.push_back(string_from_json(sets[i][e], index_field(f, e)));
      }
      c.sets.push_back(std::move(elements));
    }
    if (auto it = j.find("weights"); it != j.end()) {
      const std::string wf = key_field(field, "weights");
      require_object(*it, wf);
      for (const auto& [key, value] : it->items()) {
        c.element_weights.emplace_back(key, value_from_json(value, key_field(wf, key)));
      }
    }
    return c;
  }
  if (type == "harmonic") {
    reject_unknown(j, {"type", "n", "eps"}, field);
    return family::Harmonic{r.n(), j.contains("eps") ? r.value("eps") : Value(0)};
  }
  if (type == "table") {
    reject_unknown(j, {"type", "n", "values"}, field);
    return family::Table{r.n(), r.values("values")};
  }
  parse_fail(key_field(field, "type"), "unknown valuation family '" + type + "'");
}

Json family_to_json(const FamilySpec& spec) {
  Json out;
  out["type"] = family_name(spec);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::Bertrand> || std::is_same_v<T, family::AllOrNothing>) {
          out["n"] = f.n;
          out["c"] = to_string(f.c);
        } else if constexpr (std::is_same_v<T, family::Xos>) {
          Json clauses = Json::array();
          for (const auto& c : f.clauses) clauses.push_back(values_to_json(c));
          out["clauses"] = clauses;
        } else if constexpr (std::is_same_v<T, family::BudgetedAdditive>) {
          out["weights"] = values_to_json(f.weights);
          out["cap"] = to_string(f.cap);
        } else if constexpr (std::is_same_v<T, family::Additive>) {
          out["weights"] = values_to_json(f.weights);
        } else if constexpr (std::is_same_v<T, family::Symmetric>) {
          out["profile"] = values_to_json(f.profile);
        } else if constexpr (std::is_same_v<T, family::Coverage>) {
          out["sets"] = f.sets;
          if (!f.element_weights.empty()) {
            Json w = Json::object();
            for (const auto& [e, x] : f.element_weights) w[e] = to_string(x);
            out["weights"] = w;
          }
        } else if constexpr (std::is_same_v<T, family::Harmonic>) {
          out["n"] = f.n;
          out["eps"] = to_string(f.eps);
        } else {
          out["n"] = f.n;
          out["values"] = values_to_json(f.values);
        }
      },
      spec);
  return out;
}

int Scenario::n() const {
  if (network) return static_cast<int>(network->nodes.size());
  return buyers.empty() ? 0 : build(buyers.front().family).n();
}

GameSpec build_game(const Scenario& s) {
  try {
    if (s.network) {
      GameSpec g = bertrand_network(s.network->nodes, s.network->edges, s.map);
      return make_game(std::move(g.buyers), s.costs, g.map, s.ownership);
    }
    std::vector<Buyer> buyers;
    for (const auto& b : s.buyers) buyers.push_back(Buyer{b.weight, build(b.family)});
    return make_game(std::move(buyers), s.costs, s.map, s.ownership);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kValidationError) throw;
    throw Error(ErrorKind::kValidationError, e.what());
  }
}

namespace {

void validate(const Scenario& s) {
  const GameSpec g = build_game(s);
  auto check_size = [&](const PriceVector& p, const std::string& field) {
    if (p.size() != g.n()) {
      throw Error(ErrorKind::kValidationError,
                  field + ": expected " + std::to_string(g.n()) + " prices");
    }
  };
  if (s.prices) check_size(*s.prices, "prices");
  for (std::size_t i = 0; i < s.equilibria.size(); ++i) check_size(s.equilibria[i], index_field("equilibria", i));
  if (s.p0) check_size(*s.p0, "p0");
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    const auto& r = s.rules[i];
    if (r.seller >= g.sellers() || r.source >= g.sellers()) {
      throw Error(ErrorKind::kValidationError, index_field("rules", i) + ": unknown seller");
    }
  }
  for (int seller : s.schedule) {
    if (seller >= g.sellers()) throw Error(ErrorKind::kValidationError, "schedule: unknown seller");
  }
  if (s.start_set && !is_subset(*s.start_set, full_set(g.n()))) {
    throw Error(ErrorKind::kValidationError, "start_set: item out of range");
  }
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const std::string& source) {
  const Json root = parse_exact_json(text, source);
  require_object(root, "<root>");
  reject_unknown(root,
                 {"name", "description", "valuation", "buyers", "network", "costs", "map",
                  "ownership", "prices", "equilibria", "p0", "rules", "schedule", "start_set",
                  "epsilon", "step", "cap", "delta", "seed", "samples", "max_steps", "steps",
                  "expect", "cli"},
                 "");
  Scenario s;
  if (auto it = root.find("name"); it != root.end()) s.name = string_from_json(*it, "name");
  if (auto it = root.find("description"); it != root.end()) {
    s.description = string_from_json(*it, "description");
  }
  const int sources = root.contains("valuation") + root.contains("buyers") + root.contains("network");
  if (sources != 1) parse_fail("<root>", "exactly one of valuation, buyers, network is required");
  if (auto it = root.find("valuation"); it != root.end()) {
    s.buyers.push_back(BuyerSpec{Value(1), family_from_json(*it, "valuation")});
  }
  if (auto it = root.find("buyers"); it != root.end()) {
    require_array(*it, "buyers");
    if (it->empty()) parse_fail("buyers", "at least one buyer is required");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string f = index_field("buyers", i);
      const Json& b = (*it)[i];
      require_object(b, f);
      reject_unknown(b, {"weight", "valuation"}, f);
      BuyerSpec spec;
      if (b.contains("weight")) spec.weight = value_from_json(b["weight"], key_field(f, "weight"));
      spec.family = family_from_json(require(b, "valuation", f), key_field(f, "valuation"));
      s.buyers.push_back(std::move(spec));
    }
  }
  if (auto it = root.find("network"); it != root.end()) {
    require_object(*it, "network");
    reject_unknown(*it, {"nodes", "edges"}, "network");
    NetworkSpec net;
    const Json& nodes = require_array(require(*it, "nodes", "network"), "network.nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      net.nodes.push_back(string_from_json(nodes[i], index_field("network.nodes", i)));
    }
    const Json& edges = require_array(require(*it, "edges", "network"), "network.edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string f = index_field("network.edges", i);
      const Json& e = edges[i];
      require_array(e, f);
      if (e.size() != 2 && e.size() != 3) parse_fail(f, "expected [i, j] or [i, j, count]");
      NetworkEdge edge{string_from_json(e[0], index_field(f, 0)), string_from_json(e[1], index_field(f, 1)), 1};
      if (e.size() == 3) edge.count = small_int(e[2], index_field(f, 2), 1, 1000000);
      net.edges.push_back(std::move(edge));
    }
    s.network = std::move(net);
  }
  if (auto it = root.find("costs"); it != root.end()) s.costs = values_from_json(*it, "costs");
  if (auto it = root.find("map"); it != root.end()) s.map = map_from_json(*it, "map");
  if (auto it = root.find("ownership"); it != root.end()) {
    require_array(*it, "ownership");
    for (std::size_t i = 0; i < it->size(); ++i) {
      s.ownership.push_back(subset_from_json((*it)[i], index_field("ownership", i)));
    }
  }
  if (auto it = root.find("prices"); it != root.end()) s.prices = prices_from_json(*it, "prices");
  if (auto it = root.find("equilibria"); it != root.end()) {
    require_array(*it, "equilibria");
    for (std::size_t i = 0; i < it->size(); ++i) {
      s.equilibria.push_back(prices_from_json((*it)[i], index_field("equilibria", i)));
    }
  }
  if (auto it = root.find("p0"); it != root.end()) s.p0 = prices_from_json(*it, "p0");
  if (auto it = root.find("rules"); it != root.end()) {
    require_array(*it, "rules");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string f = index_field("rules", i);
      const Json& r = (*it)[i];
      require_object(r, f);
      reject_unknown(r, {"seller", "source", "a", "b"}, f);
      AffineRule rule;
      rule.seller = small_int(require(r, "seller", f), key_field(f, "seller"), 0, kMaxItems - 1);
      rule.source = small_int(require(r, "source", f), key_field(f, "source"), 0, kMaxItems - 1);
      rule.a = value_from_json(require(r, "a", f), key_field(f, "a"));
      rule.b = r.contains("b") ? value_from_json(r["b"], key_field(f, "b")) : Value(0);
      s.rules.push_back(std::move(rule));
    }
  }
  if (auto it = root.find("schedule"); it != root.end()) {
    require_array(*it, "schedule");
    for (std::size_t i = 0; i < it->size(); ++i) {
      s.schedule.push_back(small_int((*it)[i], index_field("schedule", i), 0, kMaxItems - 1));
    }
  }
  if (auto it = root.find("start_set"); it != root.end()) s.start_set = subset_from_json(*it, "start_set");
  auto opt_value = [&](const char* key, std::optional<Value>& out) {
    if (auto it = root.find(key); it != root.end()) out = value_from_json(*it, key);
  };
  opt_value("epsilon", s.epsilon);
  opt_value("step", s.step);
  opt_value("cap", s.cap);
  opt_value("delta", s.delta);
  auto opt_u64 = [&](const char* key, std::optional<std::uint64_t>& out) {
    if (auto it = root.find(key); it != root.end()) out = u64_from_json(*it, key);
  };
  opt_u64("seed", s.seed);
  opt_u64("samples", s.samples);
  opt_u64("max_steps", s.max_steps);
  opt_u64("steps", s.steps);
  if (auto it = root.find("expect"); it != root.end()) s.expect = *it;
  validate(s);
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParseError, path.string() + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), path.string());
}

Json to_json(const Scenario& s) {
  Json out;
  if (!s.name.empty()) out["name"] = s.name;
  if (!s.description.empty()) out["description"] = s.description;
  if (s.network) {
    Json net;
    net["nodes"] = s.network->nodes;
    Json edges = Json::array();
    for (const auto& e : s.network->edges) edges.push_back(Json::array({e.i, e.j, e.count}));
    net["edges"] = edges;
    out["network"] = net;
  } else if (s.buyers.size() == 1 && s.buyers.front().weight == 1) {
    out["valuation"] = family_to_json(s.buyers.front().family);
  } else {
    Json buyers = Json::array();
    for (const auto& b : s.buyers) {
      Json j;
      j["weight"] = to_string(b.weight);
      j["valuation"] = family_to_json(b.family);
      buyers.push_back(j);
    }
    out["buyers"] = buyers;
  }
  if (!s.costs.empty()) out["costs"] = values_to_json(s.costs);
  if (s.map) out["map"] = map_to_json(*s.map);
  if (!s.ownership.empty()) {
    Json own = Json::array();
    for (Subset o : s.ownership) own.push_back(subset_to_json(o));
    out["ownership"] = own;
  }
  if (s.prices) out["prices"] = prices_to_json(*s.prices);
  if (!s.equilibria.empty()) {
    Json eq = Json::array();
    for (const auto& p : s.equilibria) eq.push_back(prices_to_json(p));
    out["equilibria"] = eq;
  }
  if (s.p0) out["p0"] = prices_to_json(*s.p0);
  if (!s.rules.empty()) {
    Json rules = Json::array();
    for (const auto& r : s.rules) {
      Json j;
      j["seller"] = r.seller;
      j["source"] = r.source;
      j["a"] = to_string(r.a);
      j["b"] = to_string(r.b);
      rules.push_back(j);
    }
    out["rules"] = rules;
  }
  if (!s.schedule.empty()) out["schedule"] = s.schedule;
  if (s.start_set) out["start_set"] = subset_to_json(*s.start_set);
  auto put_value = [&](const char* key, const std::optional<Value>& x) {
    if (x) out[key] = to_string(*x);
  };
  put_value("epsilon", s.epsilon);
  put_value("step", s.step);
  put_value("cap", s.cap);
  put_value("delta", s.delta);
  auto put_u64 = [&](const char* key, const std::optional<std::uint64_t>& x) {
    if (x) out[key] = *x;
  };
  put_u64("seed", s.seed);
  put_u64("samples", s.samples);
  put_u64("max_steps", s.max_steps);
  put_u64("steps", s.steps);
  if (!s.expect.is_null()) out["expect"] = s.expect;
  return out;
}

}  // namespace pricing
