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

#include "wirenl/bell.h"

#include <stdexcept>
#include <string>
#include <vector>

#include "wirenl/errors.h"
#include "wirenl/vertices.h"

namespace wirenl {
namespace {

void RequireNonsignaling(const Box2& b) {
  if (!b.IsNonsignaling()) {
    throw SignalingInput("box signals (" + ToString(b.signaling()) + ")");
  }
}

// One equality row per table entry: sum_k w_k column_k = target.
void AddMixtureRows(lp::Problem& p, const std::vector<int>& vars,
                    const std::vector<const Box2*>& boxes, const Vec16& rhs) {
  for (int e = 0; e < 16; ++e) {
    std::vector<lp::Term> terms;
    for (size_t k = 0; k < vars.size(); ++k) {
      if (sgn(boxes[k]->at(e)) != 0) terms.push_back({vars[k], boxes[k]->at(e)});
    }
    p.AddRow("entry" + std::to_string(e), terms, lp::RowType::kEqual, rhs[e]);
  }
}

}  // namespace

std::string ChshIndex::ToString() const {
  return std::to_string(r) + std::to_string(s) + std::to_string(t);
}

Rational Chsh(const Vec16& p, ChshIndex idx) {
  Rational beta = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const Rational corr = p[Index2(0, 0, x, y)] + p[Index2(1, 1, x, y)] -
                            p[Index2(0, 1, x, y)] - p[Index2(1, 0, x, y)];
      const int sign = (idx.t ^ (idx.r & x) ^ (idx.s & y) ^ (x & y)) ? -1 : 1;
      beta += sign * corr;
    }
  }
  return beta;
}

Rational Chsh(const Box2& b, ChshIndex idx) { return Chsh(b.table(), idx); }

std::pair<Rational, ChshIndex> MaxChsh(const Box2& b) {
  std::pair<Rational, ChshIndex> best{Chsh(b, ChshIndex{}), ChshIndex{}};
  for (int k = 1; k < 8; ++k) {
    const ChshIndex idx = ChshIndex::FromFlat(k);
    Rational v = Chsh(b, idx);
    if (v > best.first) best = {v, idx};
  }
  return best;
}

Box2 VertexB(int r, int s, int t) {
  Vec16 v;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          v[Index2(a, b, x, y)] = ((a ^ b) == ((x & y) ^ (r & x) ^ (s & y) ^ t))
                                      ? Rational(1, 2)
                                      : Rational(0);
  return Box2(v);
}

Box2 IsotropicBox::box() const { return IsoBox(alpha, idx.r, idx.s, idx.t); }

Box2 IsoBox(const Rational& alpha, int r, int s, int t) {
  if (sgn(alpha) < 0 || alpha > 1) {
    throw std::invalid_argument("alpha must lie in [0, 1], got " + ToString(alpha));
  }
  return Mix(VertexB(r, s, t), VertexB(r, s, t ^ 1), alpha);
}

Box2 TwirlAverage(const Box2& b, int r, int s) {
  RequireNonsignaling(b);
  Vec16 avg;
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const Relabeling2 rel = {
            PartyRelabel{dx, (dx & dy) ^ dz ^ (s & dy), dy},
            PartyRelabel{dy, dz ^ (r & dx), dx}};
        const Box2 q = Relabel(b, rel);
        for (int e = 0; e < 16; ++e) avg[e] += q.at(e) / 8;
      }
  return Box2(avg);
}

IsotropicBox Twirl(const Box2& b, int r, int s) {
  const Box2 avg = TwirlAverage(b, r, s);
  IsotropicBox iso{(Chsh(avg, {r, s, 0}) + 4) / 8, {r, s, 0}};
  if (iso.alpha < Rational(1, 2)) {
    iso.alpha = 1 - iso.alpha;
    iso.idx.t = 1;
  }
  if (!(iso.box() == avg)) {
    throw std::logic_error("twirled box is not isotropic");
  }
  return iso;
}

Rational Cost2(const Box2& b) {
  RequireNonsignaling(b);
  const auto& verts = Ns2Vertices();
  lp::Problem p;
  std::vector<int> vars;
  std::vector<const Box2*> boxes;
  std::vector<lp::Term> objective, total;
  for (size_t k = 0; k < verts.size(); ++k) {
    const bool pr = k >= 16;
    vars.push_back(p.AddVariable((pr ? "mu" : "lambda") + std::to_string(pr ? k - 16 : k)));
    boxes.push_back(&verts[k]);
    total.push_back({vars.back(), 1});
    if (pr) objective.push_back({vars.back(), 1});
  }
  AddMixtureRows(p, vars, boxes, b.table());
  p.AddRow("normalization", total, lp::RowType::kEqual, 1);
  p.SetObjective(lp::Sense::kMinimize, objective);
  return lp::Solve(p).objective;
}

Rational Robustness2(const Box2& b) {
  RequireNonsignaling(b);
  const auto& verts = Ns2Vertices();
  const auto& local = DetLocal2();
  // sum nu_k V_k - p b - sum lambda_i D_i = -b, sum nu = p, sum lambda = 1.
  lp::Problem prob;
  std::vector<int> nu, lambda;
  for (size_t k = 0; k < verts.size(); ++k) nu.push_back(prob.AddVariable("nu" + std::to_string(k)));
  const int pv = prob.AddVariable("p");
  for (size_t k = 0; k < local.size(); ++k) {
    lambda.push_back(prob.AddVariable("lambda" + std::to_string(k)));
  }
  for (int e = 0; e < 16; ++e) {
    std::vector<lp::Term> terms;
    for (size_t k = 0; k < verts.size(); ++k) {
      if (sgn(verts[k].at(e)) != 0) terms.push_back({nu[k], verts[k].at(e)});
    }
    if (sgn(b.at(e)) != 0) terms.push_back({pv, -b.at(e)});
    for (size_t k = 0; k < local.size(); ++k) {
      if (sgn(local[k].at(e)) != 0) terms.push_back({lambda[k], -local[k].at(e)});
    }
    prob.AddRow("entry" + std::to_string(e), terms, lp::RowType::kEqual, -b.at(e));
  }
  std::vector<lp::Term> nu_sum, lambda_sum;
  for (int v : nu) nu_sum.push_back({v, 1});
  nu_sum.push_back({pv, -1});
  for (int v : lambda) lambda_sum.push_back({v, 1});
  prob.AddRow("noise_mass", nu_sum, lp::RowType::kEqual, 0);
  prob.AddRow("local_mass", lambda_sum, lp::RowType::kEqual, 1);
  prob.SetObjective(lp::Sense::kMinimize, {{pv, 1}});
  return lp::Solve(prob).objective;
}

lp::Result BipartiteLocal(const Box2& b) {
  RequireNonsignaling(b);
  const auto& local = DetLocal2();
  lp::Problem p;
  std::vector<int> vars;
  std::vector<const Box2*> boxes;
  std::vector<lp::Term> total;
  for (size_t k = 0; k < local.size(); ++k) {
    vars.push_back(p.AddVariable("lambda" + std::to_string(k)));
    boxes.push_back(&local[k]);
    total.push_back({vars.back(), 1});
  }
  AddMixtureRows(p, vars, boxes, b.table());
  p.AddRow("normalization", total, lp::RowType::kEqual, 1);
  p.SetObjective(lp::Sense::kFeasibility, {});
  return lp::Solve(p);
}

}  // namespace wirenl
