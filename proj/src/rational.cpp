// Copyright 2026 The qasym Authors
//
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

#include "qasym/rational.hpp"

#include <cctype>
#include <cmath>

#include "qasym/error.hpp"

namespace qasym {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void reject(std::string_view text, const char* why) {
  throw InvalidArgument("invalid rational \"" + std::string(text) + "\": " + why);
}

}  // namespace

const char* to_string(ValidationFailure failure) {
  switch (failure) {
    case ValidationFailure::kDimension: return "dimension";
    case ValidationFailure::kHermiticity: return "hermiticity";
    case ValidationFailure::kNegativeEigenvalue: return "negative-eigenvalue";
    case ValidationFailure::kTrace: return "trace";
    case ValidationFailure::kNotPositive: return "not-positive";
    case ValidationFailure::kNotTracePreserving: return "not-trace-preserving";
    case ValidationFailure::kNotUnitary: return "not-unitary";
    case ValidationFailure::kNotEnergyPreserving: return "not-energy-preserving";
  }
  return "unknown";
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) reject(text, "empty");

  mpz_class num;
  mpz_class den(1);
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) reject(text, "expected p/q with integer p and q");
    num = mpz_class(std::string(p), 10);
    den = mpz_class(std::string(q), 10);
    if (den == 0) reject(text, "zero denominator");
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) reject(text, "malformed decimal");
    num = mpz_class(std::string(whole) + std::string(frac), 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  } else {
    if (!all_digits(body)) {
      reject(text,
             "not an exact rational; irrational energies need a multi-generator "
             "frequency basis, which is not supported");
    }
    num = mpz_class(std::string(body), 10);
  }
  Rational r(negative ? mpz_class(-num) : num, den);
  r.canonicalize();
  return r;
}

namespace {

// Values built directly from a numerator and denominator are not reduced.
Rational canonical(const Rational& value) {
  Rational out(value);
  out.canonicalize();
  return out;
}

}  // namespace

std::string to_string(const Rational& value) { return canonical(value).get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

bool is_integer(const Rational& value) { return canonical(value).get_den() == 1; }

Rational rational_gcd(std::span<const Rational> values) {
  mpz_class num(0);
  mpz_class den(1);
  for (const auto& value : values) {
    if (value == 0) continue;
    const Rational v = canonical(value);
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_num().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  }
  Rational g(num, den);
  g.canonicalize();
  return g;
}

}  // namespace qasym
