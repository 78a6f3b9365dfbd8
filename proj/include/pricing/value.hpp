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

#ifndef PRICING_VALUE_HPP_
#define PRICING_VALUE_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pricing {

// Exact rational money amount. All core computations stay in this type.
using Value = mpq_class;

// Accepts integers ("-3"), fractions ("3/40") and exact decimals ("0.15",
// "1.5e-2"). The result is canonicalized.
Value parse_value(std::string_view text);

// Canonical "a/b" or "a" form; parse_value(to_string(x)) == x.
std::string to_string(const Value& value);

// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
Value harmonic_number(int n);

Value min_value(const Value& a, const Value& b);
Value max_value(const Value& a, const Value& b);

// num/den in canonical form; den must be non-zero.
Value make_fraction(long num, long den);

inline Value positive_part(const Value& x) { return x > 0 ? x : Value(0); }

}  // namespace pricing

#endif  // PRICING_VALUE_HPP_
