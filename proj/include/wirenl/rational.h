// Copyright 2026 The wirenl Authors.
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

#ifndef WIRENL_RATIONAL_H_
#define WIRENL_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wirenl {

// Exact rational number. GMP keeps values in lowest terms with a positive
// denominator after every arithmetic operation.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q". Decimal points and exponents are rejected.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational ParseRational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string ToString(const Rational& q);

double ToDouble(const Rational& q);

}  // namespace wirenl

#endif  // WIRENL_RATIONAL_H_
