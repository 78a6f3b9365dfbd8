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

#ifndef PRICING_REPORT_HPP_
#define PRICING_REPORT_HPP_

#include <string>

#include "pricing/constructions.hpp"
#include "pricing/demand.hpp"
#include "pricing/dynamics.hpp"
#include "pricing/game.hpp"
#include "pricing/grid_scan.hpp"
#include "pricing/monopolist.hpp"
#include "pricing/scenario.hpp"
#include "pricing/valuation.hpp"

namespace pricing {

inline constexpr int kReportSchema = 1;

// JSON views of the result types. Values are "a/b" strings, sets are item
// arrays, so reports diff cleanly and parse back exactly.
Json to_json(const ClassReport& r);
Json to_json(const DemandResult& r);
Json to_json(const PropertyReport& r);
Json to_json(const EquilibriumReport& r);
Json to_json(const BestResponse& r);
Json to_json(const CostConditions& r);
Json to_json(const LocalSearchResult& r);
Json to_json(const GridScanResult& r);
Json to_json(const DynamicsTrace& r);
Json to_json(const CertificateResult& r);
Json to_json(const MonopolistResult& r);
Json to_json(const SymmetrizationProfile& r);
Json subset_json(Subset s);

// CSV bodies with a header line.
// profile,verdict,utilities,welfare,worst_gain
std::string equilibrium_csv_header();
std::string equilibrium_csv_row(const EquilibriumReport& r);
// profile,verdict,utilities,welfare,worst_gain for each grid equilibrium
std::string grid_csv(const GridScanResult& r);
// step,seller,old_price,new_price,prices,chosen,utilities
std::string trace_csv(const DynamicsTrace& r);

// Lists inside one CSV field use ';' as separator.
std::string join_values(const std::vector<Value>& xs);

}  // namespace pricing

#endif  // PRICING_REPORT_HPP_
