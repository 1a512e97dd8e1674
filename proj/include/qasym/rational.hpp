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

#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>

namespace qasym {

// Exact rational number. Energies and energy differences are always held in
// this type so that lattice arithmetic never touches floating point.
using Rational = mpq_class;

// Parses "p/q", "p" or a finite decimal "a.b". Throws InvalidArgument on
// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// gcd of |values| over the rationals: gcd(numerators) / lcm(denominators) of
// the values in lowest terms. Returns 0 for an empty input or all zeros.
Rational rational_gcd(std::span<const Rational> values);

bool is_integer(const Rational& value);

}  // namespace qasym
