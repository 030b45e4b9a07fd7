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

#include "wirenl/rational.h"

#include <cctype>
#include <stdexcept>
#include <string>

namespace wirenl {
namespace {

bool IsInteger(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  std::string_view s = text.substr(begin, end - begin);
  const size_t slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!IsInteger(num, true) || !IsInteger(den, false)) {
    throw std::invalid_argument("not an exact rational: '" + std::string(s) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string ToString(const Rational& q) { return q.get_str(); }

double ToDouble(const Rational& q) { return q.get_d(); }

}  // namespace wirenl
