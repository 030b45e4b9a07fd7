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

#ifndef WIRENL_QUANTIFY_H_
#define WIRENL_QUANTIFY_H_

#include <optional>
#include <string>
#include <vector>

#include "wirenl/bell.h"
#include "wirenl/box.h"
#include "wirenl/classes.h"
#include "wirenl/wiring.h"

namespace wirenl {

// Class-level wiring value. The wired pair and its order come from
// wiring.direction; the isolated party of that direction is the wired cut.
struct WNRecord {
  Wiring wiring;
  ClassSpec spec;
  // Maximum of beta_000 of the wired box over the class.
  Rational optimum;
  // optimum if it exceeds 2, else 0.
  Rational wn;
  Box3 witness;
  // One decomposition of the witness per cut (1:23, 2:13, 3:12).
  std::vector<Decomposition> certificates;
  // Set when the record was obtained from another wiring's optimum by the
  // output relabeling a2 -> a2 + c + d a1 instead of a separate LP.
  std::optional<Wiring> derived_from;
};

// Throws UnboundedClass if the LP is unbounded.
WNRecord WnClass(const ClassSpec& spec, const Wiring& w);

// beta_000 of the wired box as a linear functional on Box3 tables.
std::array<Rational, 64> WiredChshFunctional(const Wiring& w, ChshIndex idx = {});

struct MwnClassResult {
  Rational mwn;
  Wiring witness;
  // Largest WN strictly below mwn (0 if none).
  Rational second_tier;
  // All 256 canonical wirings in eta order.
  std::vector<WNRecord> records;
};

// Maximum of WnClass over the 256 canonical wirings. One LP is solved per
// a2-relabeling orbit; other orbit members reuse the relabeled optimum.
// Ties go to the smallest eta. Uses up to WIRENL_WORKERS threads.
MwnClassResult MwnClass(const ClassSpec& spec, Direction d);

struct MwnBoxResult {
  Rational value;
  Wiring wiring;
  ChshIndex chsh;
  // value > 2.
  bool violation = false;
};

// Exhaustive maximum over FullWirings(d) and the 8 CHSH functionals. Ties go
// to the smallest wiring key, then the smallest CHSH index.
// Throws NotNonsignaling.
MwnBoxResult MwnBox(const Box3& b, Direction d);

enum class BoundKind { kSignalWeight, kCostLower, kRobustnessLower };

std::string ToString(BoundKind k);

struct BoundRecord {
  BoundKind kind;
  Rational value;
  Cut cut;
  // Wired pair and order that witnesses the bound.
  Direction direction;
  std::optional<Wiring> wiring;
  std::optional<ChshIndex> chsh;
  // beta of the witnessing wired box (lower bounds).
  Rational beta;
  // Minimal weight on terms signaling against the wiring order (signal bound).
  Rational min_weight;
  std::optional<Decomposition> decomposition;
};

// 2 w + 2, w the least weight that a fully bilocal decomposition across
// d.isolated() must put on two-way terms signaling from d.second to d.first.
// Throws NotFullyBilocal if no such decomposition exists.
BoundRecord SignalWeightBound(const Box3& b, Direction d);

// Non-locality cost and robustness relative to `spec`. The free
// non-signaling part is a nonnegative 64-vector B obeying the no-signaling
// equalities with mass p per input, so no NS3 vertex list is needed.
// Throw InvalidSpec unless some letter is N or T.
Rational Cost3Exact(const Box3& b, const ClassSpec& spec);
Rational Robustness3Exact(const Box3& b, const ClassSpec& spec);

// max over cuts whose letter is N or T, both orders of the other two parties,
// all full wirings and CHSH indices, of (beta - 2) / 2, clipped at 0.
BoundRecord CostLowerBound(const Box3& b, const ClassSpec& spec);
// The same maximization for (beta - 2) / (beta + 4).
BoundRecord RobustnessLowerBound(const Box3& b, const ClassSpec& spec);

// Worker count: WIRENL_WORKERS if set and positive, else the hardware count.
int WorkerCount();

}  // namespace wirenl

#endif  // WIRENL_QUANTIFY_H_
