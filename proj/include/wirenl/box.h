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

#ifndef WIRENL_BOX_H_
#define WIRENL_BOX_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "wirenl/rational.h"

namespace wirenl {

using Vec64 = std::array<Rational, 64>;
using Vec16 = std::array<Rational, 16>;
// Single-party table indexed by a * 2 + x.
using Vec4 = std::array<Rational, 4>;

// Flat index of p(a1 a2 a3 | x1 x2 x3); lexicographic in (a1,a2,a3,x1,x2,x3).
constexpr int Index3(int a1, int a2, int a3, int x1, int x2, int x3) {
  return (((((a1 * 2 + a2) * 2 + a3) * 2 + x1) * 2 + x2) * 2 + x3);
}
// Flat index of p(a b | x y).
constexpr int Index2(int a, int b, int x, int y) {
  return ((a * 2 + b) * 2 + x) * 2 + y;
}
// Output and input bits of party 1, 2 or 3 inside a flat Box3 index.
constexpr int OutputOf(int index, int party) { return (index >> (6 - party)) & 1; }
constexpr int InputOf(int index, int party) { return (index >> (3 - party)) & 1; }
// Index3 from per-party arrays (element k belongs to party k + 1).
constexpr int Index3(const std::array<int, 3>& a, const std::array<int, 3>& x) {
  return Index3(a[0], a[1], a[2], x[0], x[1], x[2]);
}

// Tripartite box with binary inputs and outputs. Always nonnegative and
// normalized for each of the 8 input triples.
class Box3 {
 public:
  // The maximally mixed box.
  Box3();
  // Throws InvalidBox if an entry is negative or an input triple does not sum
  // to 1.
  explicit Box3(const Vec64& table);

  const Rational& operator()(int a1, int a2, int a3, int x1, int x2, int x3) const {
    return p_[Index3(a1, a2, a3, x1, x2, x3)];
  }
  const Rational& at(int index) const { return p_[index]; }
  const Vec64& table() const { return p_; }

  friend bool operator==(const Box3& a, const Box3& b) { return a.p_ == b.p_; }

 private:
  Vec64 p_;
};

enum class Signaling { kNone, kFirstToSecond, kSecondToFirst, kBoth };

std::string ToString(Signaling s);

// Bipartite box p(a b | x y); may signal.
class Box2 {
 public:
  Box2();
  // Throws InvalidBox on negative entries or broken normalization.
  explicit Box2(const Vec16& table);

  const Rational& operator()(int a, int b, int x, int y) const {
    return p_[Index2(a, b, x, y)];
  }
  const Rational& at(int index) const { return p_[index]; }
  const Vec16& table() const { return p_; }

  // kFirstToSecond means the second party's marginal depends on x.
  Signaling signaling() const;
  bool IsNonsignaling() const { return signaling() == Signaling::kNone; }

  friend bool operator==(const Box2& a, const Box2& b) { return a.p_ == b.p_; }

 private:
  Vec16 p_;
};

// w * a + (1 - w) * b.
Box3 Mix(const Box3& a, const Box3& b, const Rational& w);
Box2 Mix(const Box2& a, const Box2& b, const Rational& w);

// Deterministic single-party strategy a = f(x), f = (f(0), f(1)).
Vec4 DeterministicLocal(int f0, int f1);

// Product of a single-party box for `isolated` and a bipartite box for the
// other two parties, which are taken in increasing order.
Box3 Product(int isolated, const Vec4& local, const Box2& pair);
Box3 Product(const Vec4& p1, const Vec4& p2, const Vec4& p3);
Box2 Product(const Vec4& p1, const Vec4& p2);

// The 26 correlators in file order:
// A0 A1 B0 B1 C0 C1, AB00..AB11, AC00..AC11, BC00..BC11, ABC000..ABC111.
struct Correlators3 {
  std::array<Rational, 26> values;

  static const std::array<std::string, 26>& Names();
  // Position of a name in file order, or -1.
  static int IndexOf(std::string_view name);

  Rational& A(int x) { return values[x]; }
  Rational& B(int x) { return values[2 + x]; }
  Rational& C(int x) { return values[4 + x]; }
  Rational& AB(int x, int y) { return values[6 + 2 * x + y]; }
  Rational& AC(int x, int z) { return values[10 + 2 * x + z]; }
  Rational& BC(int y, int z) { return values[14 + 2 * y + z]; }
  Rational& ABC(int x, int y, int z) { return values[18 + 4 * x + 2 * y + z]; }

  friend bool operator==(const Correlators3& a, const Correlators3& b) {
    return a.values == b.values;
  }
};

// Builds the box from full-correlator form
//   P = 1/8 [1 + s1 A + s2 B + s3 C + s1 s2 AB + s1 s3 AC + s2 s3 BC + s1 s2 s3 ABC]
// in the convention of the reference tables: s_i = (-1)^(a_i + 1), and the
// correlator labelled x (e.g. A0, ABC010) is evaluated at inputs 1 - x.
// Throws NegativeProbability naming the first negative entry.
Box3 FromCorrelators(const Correlators3& c);

// Inverse of FromCorrelators on non-signaling boxes. Marginal correlators are
// read at input 0 of the traced parties.
Correlators3 ToCorrelators(const Box3& b);

// One violated no-signaling equality: the marginal over `party`'s output
// differs between its two inputs with the other two parties' outputs and
// inputs fixed. `others` lists the remaining parties in increasing order.
struct NsViolation {
  int party;
  std::array<int, 2> others;
  std::array<int, 2> outputs;
  std::array<int, 2> inputs;
  Rational at_input0;
  Rational at_input1;
};

struct NsReport {
  std::vector<NsViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

NsReport CheckNonsignaling(const Box3& b);

// Sums out `traced_party`'s output at input `traced_input`; the result is over
// the remaining two parties in increasing order.
Box2 Marginal(const Box3& b, int traced_party, int traced_input);

// Local relabeling of one party: Q(a | x) = P(a ^ out_const ^ (out_input & x) | x ^ input_flip).
struct PartyRelabel {
  int input_flip = 0;
  int out_const = 0;
  int out_input = 0;

  friend bool operator==(const PartyRelabel&, const PartyRelabel&) = default;
};
using Relabeling3 = std::array<PartyRelabel, 3>;
using Relabeling2 = std::array<PartyRelabel, 2>;

Box3 Relabel(const Box3& b, const Relabeling3& r);
Box2 Relabel(const Box2& b, const Relabeling2& r);
// Applying `first` then `second` equals applying Compose(first, second).
PartyRelabel Compose(const PartyRelabel& first, const PartyRelabel& second);
PartyRelabel Inverse(const PartyRelabel& r);

enum class BoxFormat { kCorrelators, kProbabilities };

// Box file grammar:
//   format: correlators | probabilities
//   NAME = p/q                          (26 lines, correlators)
//   p(a1 a2 a3 | x1 x2 x3) = p/q        (64 lines, probabilities)
// '#' starts a comment. Throws ParseError.
Box3 ParseBox(std::string_view text);
// Correlator output requires a non-signaling box.
std::string SerializeBox(const Box3& b, BoxFormat format);

}  // namespace wirenl

#endif  // WIRENL_BOX_H_
