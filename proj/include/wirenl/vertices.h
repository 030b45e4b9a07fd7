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

#ifndef WIRENL_VERTICES_H_
#define WIRENL_VERTICES_H_

#include <vector>

#include "wirenl/box.h"

namespace wirenl {

// Deterministic strategy families. All orders are lexicographic in the truth
// tables with the first listed value most significant:
//   one-input function f:  index 2 f(0) + f(1)
//   two-input function f:  index 8 f(0,0) + 4 f(0,1) + 2 f(1,0) + f(1,1)
// Bipartite strategies are Box2 tables over (party i, party j) with i < j.

// 4 single-party strategies a = f(x).
const std::vector<Vec4>& DetLocal1();
// 16 local strategies a = f(x), b = g(y); index 4 f + g.
const std::vector<Box2>& DetLocal2();
// 64 strategies signaling at most from the first to the second party
// (first_to_second) or the reverse. The sender answers f(own input) and the
// receiver g(sender input, own input); index 16 f + g.
const std::vector<Box2>& DetOneWay(bool first_to_second);
// 256 strategies a = f(x, y), b = g(x, y); index 16 f + g.
const std::vector<Box2>& DetTwoWay();
// The 16 local deterministic boxes followed by the 8 PR-type vertices in
// (r, s, t) order.
const std::vector<Box2>& Ns2Vertices();

// Signaling class of DetTwoWay()[index].
Signaling SignalingClass(int twoway_index);

}  // namespace wirenl

#endif  // WIRENL_VERTICES_H_
