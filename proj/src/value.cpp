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

#include "pricing/value.hpp"

#include <cctype>
#include <string>

#include "pricing/error.hpp"

namespace pricing {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kNonZeroEmptySet: return "NonZeroEmptySet";
    case ErrorKind::kNonMonotone: return "NonMonotone";
    case ErrorKind::kSizeLimit: return "SizeLimit";
    case ErrorKind::kOverlappingSets: return "OverlappingSets";
    case ErrorKind::kMalformedFamily: return "MalformedFamily";
    case ErrorKind::kGreedyNotDemanded: return "GreedyNotDemanded";
    case ErrorKind::kMultiItemSeller: return "MultiItemSeller";
    case ErrorKind::kNotSubmodular: return "NotSubmodular";
    case ErrorKind::kInputNotEquilibrium: return "InputNotEquilibrium";
    case ErrorKind::kMapNotUpConsistent: return "MapNotUpConsistent";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::kParseError,
              "not an exact number: '" + std::string(text) + "'");
}

mpz_class pow10(long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return result;
}

Value parse_decimal(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    body = body.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      bad_number(text);
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(body)) bad_number(text);
    digits = std::string(body);
  }
  if (exponent > 4096 || exponent < -4096) bad_number(text);
  Value result(mpz_class(digits, 10));
  if (exponent > 0) result *= pow10(exponent);
  if (exponent < 0) result /= pow10(-exponent);
  result.canonicalize();
  return negative ? Value(-result) : result;
}

}  // namespace

Value parse_value(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Value num = parse_decimal(text.substr(0, slash));
    Value den = parse_decimal(text.substr(slash + 1));
    if (den == 0) bad_number(text);
    Value result = num / den;
    result.canonicalize();
    return result;
  }
  return parse_decimal(text);
}

std::string to_string(const Value& value) { return value.get_str(); }

Value harmonic_number(int n) {
  Value h = 0;
  for (int k = 1; k <= n; ++k) h += make_fraction(1, k);
  h.canonicalize();
  return h;
}

Value make_fraction(long num, long den) {
  if (den == 0) throw Error(ErrorKind::kInvalidInput, "zero denominator");
  Value q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

Value min_value(const Value& a, const Value& b) { return a < b ? a : b; }
Value max_value(const Value& a, const Value& b) { return a < b ? b : a; }

}  // namespace pricing
