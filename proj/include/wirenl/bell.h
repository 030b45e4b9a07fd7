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

#ifndef WIRENL_BELL_H_
#define WIRENL_BELL_H_

#include <utility>

#include "wirenl/box.h"
#include "wirenl/lp.h"

namespace wirenl {

struct ChshIndex {
  int r = 0;
  int s = 0;
  int t = 0;

  int flat() const { return 4 * r + 2 * s + t; }
  static ChshIndex FromFlat(int k) { return {k >> 2 & 1, k >> 1 & 1, k & 1}; }
  std::string ToString() const;

  friend bool operator==(const ChshIndex&, const ChshIndex&) = default;
};

// beta_rst = sum_{x,y} (-1)^(t + r x + s y + x y) <xy>, with
// <xy> = P(a = b | x y) - P(a != b | x y). Linear, so any 16-vector works.
Rational Chsh(const Vec16& p, ChshIndex idx);
Rational Chsh(const Box2& b, ChshIndex idx);
// Largest of the 8 values; ties go to the smallest flat index.
std::pair<Rational, ChshIndex> MaxChsh(const Box2& b);

// PR-type vertex: 1/2 where a + b = x y + r x + s y + t (mod 2).
Box2 VertexB(int r, int s, int t);

// alpha B_rst + (1 - alpha) B_rs(1-t).
struct IsotropicBox {
  Rational alpha;
  ChshIndex idx;

  Box2 box() const;
};

// Throws std::invalid_argument unless 0 <= alpha <= 1.
Box2 IsoBox(const Rational& alpha, int r, int s, int t);

// Uniform average of the 8 relabelings (dx, dy, dz) that fix B_rs0 and B_rs1.
// Throws SignalingInput for signaling boxes.
Box2 TwirlAverage(const Box2& b, int r, int s);
// The same average expressed as an isotropic box; t is chosen so that
// alpha >= 1/2.
IsotropicBox Twirl(const Box2& b, int r, int s);

// Minimal total weight on the 8 PR-type vertices over all decompositions into
// the 24 extremal non-signaling boxes. Throws SignalingInput.
Rational Cost2(const Box2& b);
// Minimal p such that p A + (1 - p) b is local for some non-signaling A.
// Throws SignalingInput.
Rational Robustness2(const Box2& b);

// Feasibility of b as a mixture of the 16 local deterministic boxes.
// Throws SignalingInput.
lp::Result BipartiteLocal(const Box2& b);

}  // namespace wirenl

#endif  // WIRENL_BELL_H_
