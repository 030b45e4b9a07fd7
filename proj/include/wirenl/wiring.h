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

#ifndef WIRENL_WIRING_H_
#define WIRENL_WIRING_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wirenl/box.h"

namespace wirenl {

// Measurement order inside the wired pair. Parties are numbered 1..3.
struct Direction {
  int first = 1;
  int second = 2;

  int isolated() const { return 6 - first - second; }
  // "1to2" style.
  std::string ToString() const;
  static Direction Parse(std::string_view text);  // throws ParseError

  friend auto operator<=>(const Direction&, const Direction&) = default;
};

// How the first-measured party's input is derived from the effective input x'.
enum class InputMode : uint8_t { kIdentity = 0, kNegated = 1, kZero = 2, kOne = 3 };

// Two-step wiring of a pair of subsystems. The first party gets input
// mode(x') and returns a1; the second gets x2 = gamma(a1, x') and returns a2;
// the effective output is eta(a1, x', a2).
//
// gamma holds the algebraic-normal-form coefficient of a1^i x1^j at bit
// 2i + j; eta holds the coefficient of a1^i x1^j a2^k at bit 4i + 2j + k.
// Inside the polynomials a1/x1 refer to the first-measured party and a2 to the
// second, whatever their numbers in the box.
struct Wiring {
  Direction direction;
  InputMode mode = InputMode::kIdentity;
  uint8_t gamma = 0b0100;  // x2 = a1
  uint8_t eta = 0;

  bool IsCanonical() const { return mode == InputMode::kIdentity && gamma == 0b0100; }
  // Lexicographic (mode, gamma, eta); used for tie-breaking.
  auto key() const { return std::tuple(static_cast<int>(mode), gamma, eta); }

  friend bool operator==(const Wiring&, const Wiring&) = default;
};

// Truth-table evaluation of the polynomials.
int EvalGamma(uint8_t gamma, int a1, int x1);
int EvalEta(uint8_t eta, int a1, int x1, int a2);
int EvalMode(InputMode mode, int x);
// Truth table of eta with entry (a1, x1, a2) at bit 4*a1 + 2*x1 + a2; the
// transform is its own inverse.
uint8_t AnfToTruthTable3(uint8_t anf);
uint8_t TruthTableToAnf3(uint8_t tt);

// Effective box over (a', a_isolated | x', x_isolated). Linear in the box.
// Throws InvalidBox when the result is not normalized, which can happen only
// if the box signals from the second-measured party to the first.
Box2 Apply(const Wiring& w, const Box3& b);
// Same map on an arbitrary 64-vector.
Vec16 ApplyLinear(const Wiring& w, const Vec64& p);

// The 256 wirings with mode = identity and x2 = a1, ordered by eta.
std::vector<Wiring> CanonicalWirings(Direction d);
// All mode x gamma x eta combinations with extensionally equal maps merged;
// the smallest key of each class is kept. Ordered by key.
std::vector<Wiring> FullWirings(Direction d);

// Wirings obtained by substituting a2 -> a2 + c + d a1 into eta, sorted by
// eta, duplicates removed.
std::vector<Wiring> RelabelOrbit(const Wiring& w);

// Polynomial text over {1, a1, x1} (gamma) or {1, a1, x1, a2} (eta).
std::string FormatGamma(uint8_t gamma);
std::string FormatEta(uint8_t eta);
uint8_t ParseGamma(std::string_view text);  // throws ParseError(position)
uint8_t ParseEta(std::string_view text);    // throws ParseError(position)

// Grammar: [x1=x'|x'+1|0|1;] x2=<poly over 1,a1,x1>; out=<poly over 1,a1,x1,a2>
// A bare output polynomial is accepted as shorthand for "x2=a1; out=<poly>".
Wiring ParseWiring(std::string_view text, Direction d);
std::string FormatWiring(const Wiring& w);

}  // namespace wirenl

#endif  // WIRENL_WIRING_H_
