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

#include "wirenl/vertices.h"

#include "wirenl/bell.h"

namespace wirenl {
namespace {

int F1(int f, int x) { return f >> (1 - x) & 1; }
int F2(int f, int x, int y) { return f >> (3 - (2 * x + y)) & 1; }

Box2 Deterministic(int (*first)(int, int, int), int f, int (*second)(int, int, int),
                   int g) {
  Vec16 t;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) t[Index2(first(f, x, y), second(g, x, y), x, y)] = 1;
  return Box2(t);
}

}  // namespace

const std::vector<Vec4>& DetLocal1() {
  static const std::vector<Vec4> family = [] {
    std::vector<Vec4> out;
    for (int f = 0; f < 4; ++f) out.push_back(DeterministicLocal(F1(f, 0), F1(f, 1)));
    return out;
  }();
  return family;
}

const std::vector<Box2>& DetLocal2() {
  static const std::vector<Box2> family = [] {
    std::vector<Box2> out;
    for (int f = 0; f < 4; ++f)
      for (int g = 0; g < 4; ++g)
        out.push_back(Deterministic([](int f, int x, int) { return F1(f, x); }, f,
                                    [](int g, int, int y) { return F1(g, y); }, g));
    return out;
  }();
  return family;
}

const std::vector<Box2>& DetOneWay(bool first_to_second) {
  static const std::vector<Box2> forward = [] {
    std::vector<Box2> out;
    for (int f = 0; f < 4; ++f)
      for (int g = 0; g < 16; ++g)
        out.push_back(Deterministic([](int f, int x, int) { return F1(f, x); }, f,
                                    [](int g, int x, int y) { return F2(g, x, y); }, g));
    return out;
  }();
  static const std::vector<Box2> backward = [] {
    std::vector<Box2> out;
    for (int f = 0; f < 4; ++f)
      for (int g = 0; g < 16; ++g)
        out.push_back(Deterministic([](int g, int x, int y) { return F2(g, y, x); }, g,
                                    [](int f, int, int y) { return F1(f, y); }, f));
    return out;
  }();
  return first_to_second ? forward : backward;
}

const std::vector<Box2>& DetTwoWay() {
  static const std::vector<Box2> family = [] {
    std::vector<Box2> out;
    for (int f = 0; f < 16; ++f)
      for (int g = 0; g < 16; ++g)
        out.push_back(Deterministic([](int f, int x, int y) { return F2(f, x, y); }, f,
                                    [](int g, int x, int y) { return F2(g, x, y); }, g));
    return out;
  }();
  return family;
}

const std::vector<Box2>& Ns2Vertices() {
  static const std::vector<Box2> family = [] {
    std::vector<Box2> out = DetLocal2();
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) out.push_back(VertexB(r, s, t));
    return out;
  }();
  return family;
}

Signaling SignalingClass(int twoway_index) {
  const int f = twoway_index / 16;
  const int g = twoway_index % 16;
  bool f_uses_y = false;
  bool g_uses_x = false;
  for (int v = 0; v < 2; ++v) {
    if (F2(f, v, 0) != F2(f, v, 1)) f_uses_y = true;
    if (F2(g, 0, v) != F2(g, 1, v)) g_uses_x = true;
  }
  if (f_uses_y && g_uses_x) return Signaling::kBoth;
  if (f_uses_y) return Signaling::kSecondToFirst;
  if (g_uses_x) return Signaling::kFirstToSecond;
  return Signaling::kNone;
}

}  // namespace wirenl
