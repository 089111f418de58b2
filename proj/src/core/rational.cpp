// Copyright 2026 The cwi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cwi/rational.hpp"

#include <cctype>
#include <string>

#include "cwi/error.hpp"

namespace cwi {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  fail(ErrorCode::kParse, "malformed number literal '" + std::string(text) + "'");
}

mpz_class integer(std::string_view digits) { return mpz_class(std::string(digits), 10); }

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) fail(ErrorCode::kInvalidArgument, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorCode::kInvalidArgument, "division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    mpz_class d = integer(den);
    if (d == 0) fail(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
    out.value_ = mpq_class(integer(num), d);
  } else {
    std::string_view mant = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mant = s.substr(0, e);
      std::string_view exp = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
        exp_negative = exp.front() == '-';
        exp.remove_prefix(1);
      }
      if (!all_digits(exp) || exp.size() > 6) bad_literal(text);
      exponent = std::stol(std::string(exp));
      if (exp_negative) exponent = -exponent;
    }
    std::string_view whole = mant;
    std::string_view frac;
    if (const auto dot = mant.find('.'); dot != std::string_view::npos) {
      whole = mant.substr(0, dot);
      frac = mant.substr(dot + 1);
    }
    if (whole.empty() && frac.empty()) bad_literal(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      bad_literal(text);
    }
    const std::string digits = std::string(whole) + std::string(frac);
    mpz_class num = integer(digits.empty() ? "0" : digits);
    exponent -= static_cast<long>(frac.size());
    if (exponent >= 0) {
      out.value_ = mpq_class(num * pow10(static_cast<unsigned long>(exponent)));
    } else {
      out.value_ = mpq_class(num, pow10(static_cast<unsigned long>(-exponent)));
    }
  }
  out.value_.canonicalize();
  if (negative) out.value_ = -out.value_;
  return out;
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

}  // namespace cwi
