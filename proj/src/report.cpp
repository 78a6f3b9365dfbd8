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

#include "pricing/report.hpp"

#include <sstream>

namespace pricing {

namespace {

Json value_json(const Value& x) { return to_string(x); }

Json values_json(const std::vector<Value>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

Json witness_json(const std::optional<ClassWitness>& w) {
  if (!w) return nullptr;
  Json out;
  Json sets = Json::array();
  for (Subset s : w->sets) sets.push_back(subset_json(s));
  out["sets"] = sets;
  out["detail"] = w->detail;
  return out;
}

Json check_json(const PropertyCheck& c) {
  Json out;
  out["trials"] = c.trials;
  out["passed"] = c.passed;
  out["first_counterexample"] = c.first_counterexample ? Json(*c.first_counterexample) : Json(nullptr);
  return out;
}

std::string chosen_field(const std::vector<Subset>& chosen) {
  std::string out;
  for (std::size_t b = 0; b < chosen.size(); ++b) {
    if (b) out += ';';
    out += std::to_string(chosen[b]);
  }
  return out;
}

std::string prices_field(const PriceVector& p) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i) out += ';';
    out += p.blocked(i) ? std::string("blocked") : to_string(p[i]);
  }
  return out;
}

}  // namespace

Json subset_json(Subset s) {
  Json out = Json::array();
  for (int i : items_of(s)) out.push_back(i);
  return out;
}

std::string join_values(const std::vector<Value>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += to_string(xs[i]);
  }
  return out;
}

Json to_json(const ClassReport& r) {
  Json out;
  out["monotone"] = r.monotone;
  out["subadditive"] = r.subadditive;
  out["submodular"] = r.submodular;
  out["gross_substitutes"] = r.gross_substitutes;
  Json w;
  w["monotone"] = witness_json(r.monotone_witness);
  w["subadditive"] = witness_json(r.subadditive_witness);
  w["submodular"] = witness_json(r.submodular_witness);
  w["gross_substitutes"] = witness_json(r.gross_substitutes_witness);
  out["witness"] = w;
  return out;
}

Json to_json(const DemandResult& r) {
  Json out;
  out["best_utility"] = value_json(r.best_utility);
  Json d = Json::array();
  for (Subset s : r.demanded) d.push_back(subset_json(s));
  out["demanded"] = d;
  out["chosen"] = r.chosen ? subset_json(*r.chosen) : Json(nullptr);
  return out;
}

Json to_json(const PropertyReport& r) {
  Json out;
  out["demanded_membership"] = check_json(r.demanded_membership);
  out["maximality"] = check_json(r.maximality);
  out["up_consistency"] = check_json(r.up_consistency);
  out["gs_consistency"] = check_json(r.gs_consistency);
  return out;
}

Json to_json(const EquilibriumReport& r) {
  Json out;
  out["verdict"] = std::string(verdict_name(r.verdict));
  out["epsilon"] = value_json(r.epsilon);
  out["prices"] = prices_to_json(r.prices);
  Json chosen = Json::array();
  for (Subset s : r.chosen) chosen.push_back(subset_json(s));
  out["chosen"] = chosen;
  out["welfare"] = value_json(r.welfare);
  out["worst_gain"] = value_json(r.worst_gain);
  out["worst_seller"] = r.worst_seller ? Json(*r.worst_seller) : Json(nullptr);
  Json sellers = Json::array();
  for (const auto& s : r.sellers) {
    Json j;
    j["seller"] = s.seller;
    j["utility"] = value_json(s.utility);
    j["best_value"] = value_json(s.best_value);
    j["attained"] = s.attained;
    j["deviation_price"] = value_json(s.deviation_price);
    j["gain"] = value_json(s.gain);
    sellers.push_back(j);
  }
  out["sellers"] = sellers;
  if (r.lemma.evaluated) {
    Json l;
    l["condition1"] = r.lemma.condition1;
    l["condition2"] = r.lemma.condition2;
    l["failing_item"] = r.lemma.failing_item ? Json(*r.lemma.failing_item) : Json(nullptr);
    l["witness"] = r.lemma.witness ? subset_json(*r.lemma.witness) : Json(nullptr);
    l["agrees"] = r.lemma.agrees ? Json(*r.lemma.agrees) : Json(nullptr);
    out["conditions"] = l;
  } else {
    out["conditions"] = nullptr;
  }
  return out;
}

Json to_json(const BestResponse& r) {
  Json out;
  out["value"] = value_json(r.value);
  out["attained"] = r.attained;
  out["witness_price"] = value_json(r.witness_price);
  return out;
}

Json to_json(const CostConditions& r) {
  Json out;
  out["chosen"] = subset_json(r.chosen);
  out["condition1"] = r.condition1;
  out["condition2"] = r.condition2;
  out["failing_item"] = r.failing_item ? Json(*r.failing_item) : Json(nullptr);
  out["witness"] = r.witness ? subset_json(*r.witness) : Json(nullptr);
  return out;
}

Json to_json(const LocalSearchResult& r) {
  Json out;
  out["set"] = subset_json(r.set);
  out["welfare"] = value_json(r.welfare);
  out["moves"] = r.moves;
  out["optimum"] = subset_json(r.optimum);
  out["optimum_welfare"] = value_json(r.optimum_welfare);
  out["optimal"] = r.optimal;
  return out;
}

Json to_json(const GridScanResult& r) {
  Json out;
  out["step"] = value_json(r.step);
  out["epsilon"] = value_json(r.epsilon);
  out["cap"] = value_json(r.cap);
  out["points"] = r.points;
  out["found"] = r.equilibria.size();
  out["min_welfare"] = r.min_welfare ? value_json(*r.min_welfare) : Json(nullptr);
  out["max_welfare"] = r.max_welfare ? value_json(*r.max_welfare) : Json(nullptr);
  Json eq = Json::array();
  for (const auto& p : r.equilibria) {
    Json j;
    j["prices"] = prices_to_json(p.prices);
    j["verdict"] = std::string(verdict_name(p.verdict));
    j["utilities"] = values_json(p.utilities);
    j["welfare"] = value_json(p.welfare);
    j["worst_gain"] = value_json(p.worst_gain);
    eq.push_back(j);
  }
  out["equilibria"] = eq;
  return out;
}

Json to_json(const DynamicsTrace& r) {
  Json out;
  out["outcome"] = std::string(outcome_name(r.outcome));
  out["steps"] = r.steps.size();
  out["initial"] = prices_to_json(r.initial);
  out["final"] = prices_to_json(r.final_prices);
  if (r.outcome == Outcome::kCycle) {
    out["cycle_start"] = r.cycle_start;
    out["cycle_period"] = r.cycle_period;
  }
  out["round_growth"] = r.round_growth ? value_json(*r.round_growth) : Json(nullptr);
  return out;
}

Json to_json(const CertificateResult& r) {
  Json out;
  out["produced"] = r.produced();
  out["points"] = r.points;
  if (r.certificate) {
    const auto& c = *r.certificate;
    out["epsilon"] = value_json(c.epsilon);
    out["step"] = value_json(c.step);
    out["cap"] = value_json(c.cap);
    out["margin"] = value_json(c.margin);
    Value smallest = c.witnesses.front().gain;
    for (const auto& w : c.witnesses) smallest = min_value(smallest, w.gain);
    out["smallest_gain"] = value_json(smallest);
    Json ws = Json::array();
    for (const auto& w : c.witnesses) {
      Json j;
      j["profile"] = prices_to_json(w.profile);
      j["seller"] = w.seller;
      j["price"] = value_json(w.price);
      j["gain"] = value_json(w.gain);
      ws.push_back(j);
    }
    out["witnesses"] = ws;
  }
  out["counter"] = r.counter ? prices_to_json(*r.counter) : Json(nullptr);
  return out;
}

Json to_json(const MonopolistResult& r) {
  Json out;
  out["set"] = subset_json(r.set);
  out["revenue"] = value_json(r.revenue);
  out["prices"] = prices_to_json(r.prices);
  out["realized"] = r.realized;
  out["welfare"] = value_json(r.welfare);
  out["welfare_min"] = value_json(r.welfare_min);
  out["welfare_max"] = value_json(r.welfare_max);
  out["samples_used"] = r.samples_used;
  return out;
}

Json to_json(const SymmetrizationProfile& r) {
  Json out;
  out["averages"] = values_json(r.averages);
  out["deltas"] = values_json(r.deltas);
  out["best_k"] = r.best_k;
  out["best_value"] = value_json(r.best_value);
  return out;
}

std::string equilibrium_csv_header() { return "profile,verdict,utilities,welfare,worst_gain\n"; }

std::string equilibrium_csv_row(const EquilibriumReport& r) {
  std::vector<Value> u;
  for (const auto& s : r.sellers) u.push_back(s.utility);
  std::ostringstream out;
  out << prices_field(r.prices) << ',' << verdict_name(r.verdict) << ',' << join_values(u) << ','
      << to_string(r.welfare) << ',' << to_string(r.worst_gain) << '\n';
  return out.str();
}

std::string grid_csv(const GridScanResult& r) {
  std::ostringstream out;
  out << equilibrium_csv_header();
  for (const auto& p : r.equilibria) {
    out << prices_field(p.prices) << ',' << verdict_name(p.verdict) << ',' << join_values(p.utilities)
        << ',' << to_string(p.welfare) << ',' << to_string(p.worst_gain) << '\n';
  }
  return out.str();
}

std::string trace_csv(const DynamicsTrace& r) {
  std::ostringstream out;
  out << "step,seller,old_price,new_price,prices,chosen,utilities\n";
  PriceVector p = r.initial;
  for (const auto& s : r.steps) {
    p.set(s.seller, s.new_price);
    out << s.index << ',' << s.seller << ',' << to_string(s.old_price) << ','
        << to_string(s.new_price) << ',' << prices_field(p) << ',' << chosen_field(s.chosen) << ','
        << join_values(s.utilities) << '\n';
  }
  return out.str();
}

}  // namespace pricing
