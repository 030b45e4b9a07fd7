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

#include "wirenl/classes.h"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wirenl/errors.h"
#include "wirenl/vertices.h"

namespace wirenl {
namespace {

const char* kTensor = " ⊗ ";

void RequireNonsignaling(const Box3& b) {
  const NsReport report = CheckNonsignaling(b);
  if (!report.ok()) {
    throw NotNonsignaling("box violates no-signaling:\n" + report.ToString());
  }
}

// Table of DetLocal1()[local] (party `isolated`) times `pair` (other two).
Vec64 ProductColumn(int isolated, int local, const Box2& pair) {
  const Cut cut{isolated};
  const Vec4& f = DetLocal1()[local];
  Vec64 t;
  for (int i = 0; i < 64; ++i) {
    const Rational& lv = f[OutputOf(i, isolated) * 2 + InputOf(i, isolated)];
    if (sgn(lv) == 0) continue;
    t[i] = lv * pair(OutputOf(i, cut.lower()), OutputOf(i, cut.higher()),
                     InputOf(i, cut.lower()), InputOf(i, cut.higher()));
  }
  return t;
}

std::string FamilyName(const PairStrategy& s, Cut cut) {
  const std::string lo = std::to_string(cut.lower());
  const std::string hi = std::to_string(cut.higher());
  switch (s.family) {
    case PairFamily::kNs2:
      return "NS" + lo + hi;
    case PairFamily::kTwoWay:
      return "TW" + lo + hi;
    case PairFamily::kOneWayForward:
      return "OW" + lo + hi;
    case PairFamily::kOneWayBackward:
      return "OW" + hi + lo;
  }
  return "?";
}

std::vector<PairStrategy> FamilyFor(Letter letter, int side) {
  std::vector<PairStrategy> out;
  if (letter == Letter::kN) {
    for (int j = 0; j < static_cast<int>(Ns2Vertices().size()); ++j) {
      out.push_back({PairFamily::kNs2, j});
    }
  } else if (letter == Letter::kS) {
    for (int j = 0; j < 256; ++j) out.push_back({PairFamily::kTwoWay, j});
  } else {
    const PairFamily f = side == 0 ? PairFamily::kOneWayForward : PairFamily::kOneWayBackward;
    for (int j = 0; j < 64; ++j) out.push_back({f, j});
  }
  return out;
}

void AddTerms(std::vector<lp::Term>& dst, const std::vector<lp::Term>& src,
              const Rational& scale) {
  for (const auto& t : src) dst.push_back({t.var, t.coef * scale});
}

// Feasibility LP for "b equals a mixture of the given columns".
Membership SolveMixture(const Box3& b, const std::vector<Vec64>& cols,
                        const std::vector<DecompositionTerm>& labels) {
  lp::Problem p;
  std::vector<int> vars;
  for (size_t k = 0; k < cols.size(); ++k) vars.push_back(p.AddVariable("w" + std::to_string(k)));
  for (int e = 0; e < 64; ++e) {
    std::vector<lp::Term> terms;
    for (size_t k = 0; k < cols.size(); ++k) {
      if (sgn(cols[k][e]) != 0) terms.push_back({vars[k], cols[k][e]});
    }
    p.AddRow("entry" + std::to_string(e), terms, lp::RowType::kEqual, b.at(e));
  }
  std::vector<lp::Term> total;
  for (int v : vars) total.push_back({v, 1});
  p.AddRow("normalization", total, lp::RowType::kEqual, 1);
  p.SetObjective(lp::Sense::kFeasibility, {});
  Membership m;
  m.lp = lp::Solve(p);
  m.member = m.lp.status == lp::Status::kOptimal;
  if (m.member) {
    Decomposition d;
    for (size_t k = 0; k < cols.size(); ++k) {
      if (sgn(m.lp.primal[vars[k]]) == 0) continue;
      DecompositionTerm t = labels[k];
      t.weight = m.lp.primal[vars[k]];
      d.terms.push_back(t);
    }
    if (!d.Reproduces(b)) throw std::logic_error("decomposition does not reproduce box");
    m.decomposition = std::move(d);
  }
  return m;
}

uint64_t DeterministicKey(const Vec64& col) {
  uint64_t key = 0;
  for (int i = 0; i < 64; ++i) {
    if (sgn(col[i]) != 0) key |= uint64_t{1} << i;
  }
  return key;
}

Membership TrilocalMixture(const Box3& b, bool one_way) {
  RequireNonsignaling(b);
  std::vector<Vec64> cols;
  std::vector<DecompositionTerm> labels;
  std::set<uint64_t> seen;
  for (int k = 1; k <= 3; ++k) {
    for (int f = 0; f < 4; ++f) {
      std::vector<PairStrategy> family;
      if (one_way) {
        family = FamilyFor(Letter::kT, 0);
        auto back = FamilyFor(Letter::kT, 1);
        family.insert(family.end(), back.begin(), back.end());
      } else {
        family = FamilyFor(Letter::kS, 0);
      }
      for (const PairStrategy& s : family) {
        Vec64 col = ProductColumn(k, f, PairBox(s));
        if (!seen.insert(DeterministicKey(col)).second) continue;
        cols.push_back(std::move(col));
        labels.push_back({Rational(0), k, f, {s}});
      }
    }
  }
  return SolveMixture(b, cols, labels);
}

}  // namespace

std::string Cut::ToString() const {
  return std::to_string(isolated) + ":" + std::to_string(lower()) + std::to_string(higher());
}

Cut Cut::Parse(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (c != ' ') t += c;
  }
  if (!t.empty() && t[0] >= '1' && t[0] <= '3') {
    const Cut c{t[0] - '0'};
    if (t.size() == 1 || t == c.ToString()) return c;
  }
  throw ParseError(0, 1, "cut must be one of 1:23, 2:13, 3:12");
}

bool ClassSpec::HasNorT() const {
  for (Letter l : letters) {
    if (l != Letter::kS) return true;
  }
  return false;
}

std::string ClassSpec::ToString() const {
  std::string s;
  for (Letter l : letters) s += l == Letter::kN ? 'N' : l == Letter::kT ? 'T' : 'S';
  return s;
}

ClassSpec ClassSpec::Parse(std::string_view text) {
  if (text.size() != 3) throw ParseError(0, 1, "class spec must be three letters from N, T, S");
  ClassSpec spec;
  for (int k = 0; k < 3; ++k) {
    switch (text[k]) {
      case 'N':
        spec.letters[k] = Letter::kN;
        break;
      case 'T':
        spec.letters[k] = Letter::kT;
        break;
      case 'S':
        spec.letters[k] = Letter::kS;
        break;
      default:
        throw ParseError(0, k + 1, "class letters must be N, T or S");
    }
  }
  return spec;
}

const Box2& PairBox(const PairStrategy& s) {
  switch (s.family) {
    case PairFamily::kNs2:
      return Ns2Vertices()[s.index];
    case PairFamily::kTwoWay:
      return DetTwoWay()[s.index];
    case PairFamily::kOneWayForward:
      return DetOneWay(true)[s.index];
    case PairFamily::kOneWayBackward:
      return DetOneWay(false)[s.index];
  }
  throw std::logic_error("unknown pair family");
}

Vec64 Decomposition::Reconstruct(int slot) const {
  Vec64 sum;
  for (const auto& t : terms) {
    const PairStrategy& s = t.pair[std::min<size_t>(slot, t.pair.size() - 1)];
    const Vec64 col = ProductColumn(t.isolated, t.local, PairBox(s));
    for (int i = 0; i < 64; ++i) {
      if (sgn(col[i]) != 0) sum[i] += t.weight * col[i];
    }
  }
  return sum;
}

bool Decomposition::Reproduces(const Box3& b) const {
  Rational total = 0;
  size_t slots = 1;
  for (const auto& t : terms) {
    if (sgn(t.weight) <= 0) return false;
    total += t.weight;
    slots = std::max(slots, t.pair.size());
  }
  if (total != 1) return false;
  for (size_t s = 0; s < slots; ++s) {
    if (Reconstruct(static_cast<int>(s)) != b.table()) return false;
  }
  return true;
}

std::string Decomposition::ToText() const {
  std::ostringstream out;
  for (const auto& t : terms) {
    const Cut cut{t.isolated};
    out << "weight " << ToString(t.weight) << " : L1[" << t.local << "]";
    for (const auto& s : t.pair) out << kTensor << FamilyName(s, cut) << "[" << s.index << "]";
    out << "\n";
  }
  return out.str();
}

Decomposition Relabel(const Decomposition& d, int party, const PartyRelabel& r) {
  auto find_local = [](const Vec4& t) {
    for (int k = 0; k < 4; ++k) {
      if (DetLocal1()[k] == t) return k;
    }
    throw std::logic_error("relabeled local strategy not found");
  };
  Decomposition out;
  for (const auto& term : d.terms) {
    DecompositionTerm t = term;
    const Cut cut{term.isolated};
    if (party == term.isolated) {
      const Vec4& f = DetLocal1()[term.local];
      Vec4 g;
      for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
          g[a * 2 + x] = f[(a ^ r.out_const ^ (r.out_input & x)) * 2 + (x ^ r.input_flip)];
      t.local = find_local(g);
    } else {
      Relabeling2 rel{};
      rel[party == cut.lower() ? 0 : 1] = r;
      for (auto& s : t.pair) {
        const Box2 image = Relabel(PairBox(s), rel);
        const int size = s.family == PairFamily::kNs2     ? 24
                         : s.family == PairFamily::kTwoWay ? 256
                                                           : 64;
        int found = -1;
        for (int k = 0; k < size && found < 0; ++k) {
          if (PairBox({s.family, k}) == image) found = k;
        }
        if (found < 0) throw std::logic_error("relabeled pair strategy leaves its family");
        s.index = found;
      }
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

CutModel CutModel::Add(lp::Problem& p, Cut cut, Letter letter, const std::string& prefix) {
  CutModel model;
  model.cut_ = cut;
  model.letter_ = letter;
  const int sides = letter == Letter::kT ? 2 : 1;
  std::array<std::vector<lp::Term>, 64> other;
  std::array<std::vector<lp::Term>, 4> local_mass[2];
  for (int side = 0; side < sides; ++side) {
    const std::vector<PairStrategy> family = FamilyFor(letter, side);
    for (int f = 0; f < 4; ++f) {
      for (const PairStrategy& s : family) {
        const int var = p.AddVariable(prefix + (side ? "b" : "") + "_L" + std::to_string(f) +
                                      "_" + FamilyName(s, cut) + "_" + std::to_string(s.index));
        model.columns_.push_back({var, f, s, side});
        const Vec64 col = ProductColumn(cut.isolated, f, PairBox(s));
        auto& target = side == 0 ? model.box_ : other;
        for (int i = 0; i < 64; ++i) {
          if (sgn(col[i]) != 0) target[i].push_back({var, col[i]});
        }
        local_mass[side][f].push_back({var, 1});
        if (side == 0) model.mass_.push_back({var, 1});
      }
    }
  }
  if (letter == Letter::kT) {
    for (int i = 0; i < 64; ++i) {
      std::vector<lp::Term> row = model.box_[i];
      AddTerms(row, other[i], -1);
      p.AddRow(prefix + "_order" + std::to_string(i), row, lp::RowType::kEqual, 0);
    }
    for (int f = 0; f < 4; ++f) {
      std::vector<lp::Term> row = local_mass[0][f];
      AddTerms(row, local_mass[1][f], -1);
      p.AddRow(prefix + "_mass" + std::to_string(f), row, lp::RowType::kEqual, 0);
    }
  }
  return model;
}

std::vector<lp::Term> CutModel::SignalingWeight(int from, int to) const {
  const Signaling wanted = from < to ? Signaling::kFirstToSecond : Signaling::kSecondToFirst;
  std::vector<lp::Term> out;
  for (const auto& c : columns_) {
    if (c.pair.family != PairFamily::kTwoWay) continue;
    const Signaling s = SignalingClass(c.pair.index);
    if (s == wanted || s == Signaling::kBoth) out.push_back({c.var, 1});
  }
  return out;
}

Decomposition CutModel::Extract(const std::vector<Rational>& x) const {
  Decomposition d;
  if (letter_ != Letter::kT) {
    for (const auto& c : columns_) {
      if (sgn(x[c.var]) > 0) d.terms.push_back({x[c.var], cut_.isolated, c.local, {c.pair}});
    }
    return d;
  }
  // Product coupling of the two orderings for each local strategy.
  for (int f = 0; f < 4; ++f) {
    std::vector<const Column*> fwd, bwd;
    Rational mass = 0;
    for (const auto& c : columns_) {
      if (c.local != f || sgn(x[c.var]) <= 0) continue;
      (c.side == 0 ? fwd : bwd).push_back(&c);
      if (c.side == 0) mass += x[c.var];
    }
    for (const Column* a : fwd) {
      for (const Column* b : bwd) {
        d.terms.push_back(
            {x[a->var] * x[b->var] / mass, cut_.isolated, f, {a->pair, b->pair}});
      }
    }
  }
  return d;
}

void AddNonsignalingRows(lp::Problem& p, const std::array<std::vector<lp::Term>, 64>& box,
                         const std::string& prefix) {
  for (int k = 1; k <= 3; ++k) {
    const int i = k == 1 ? 2 : 1;
    const int j = k == 3 ? 2 : 3;
    for (int ai = 0; ai < 2; ++ai)
      for (int aj = 0; aj < 2; ++aj)
        for (int xi = 0; xi < 2; ++xi)
          for (int xj = 0; xj < 2; ++xj) {
            std::vector<lp::Term> row;
            for (int xk = 0; xk < 2; ++xk) {
              for (int ak = 0; ak < 2; ++ak) {
                std::array<int, 3> a{}, x{};
                a[i - 1] = ai;
                a[j - 1] = aj;
                a[k - 1] = ak;
                x[i - 1] = xi;
                x[j - 1] = xj;
                x[k - 1] = xk;
                AddTerms(row, box[Index3(a, x)], xk == 0 ? 1 : -1);
              }
            }
            p.AddRow(prefix + "_ns" + std::to_string(k) + std::to_string(ai) +
                         std::to_string(aj) + std::to_string(xi) + std::to_string(xj),
                     row, lp::RowType::kEqual, 0);
          }
  }
}

ClassModel ClassModel::Add(lp::Problem& p, const ClassSpec& spec) {
  ClassModel model;
  for (int k = 1; k <= 3; ++k) {
    model.cuts.push_back(
        CutModel::Add(p, Cut{k}, spec.letters[k - 1], "c" + std::to_string(k)));
  }
  for (int k = 1; k < 3; ++k) {
    for (int i = 0; i < 64; ++i) {
      std::vector<lp::Term> row = model.cuts[k].box()[i];
      AddTerms(row, model.cuts[0].box()[i], -1);
      p.AddRow("link" + std::to_string(k + 1) + "_" + std::to_string(i), row,
               lp::RowType::kEqual, 0);
    }
  }
  if (!spec.HasNorT()) AddNonsignalingRows(p, model.box(), "box");
  return model;
}

Membership MemberLetter(const Box3& b, Cut cut, Letter letter) {
  RequireNonsignaling(b);
  lp::Problem p;
  CutModel model = CutModel::Add(p, cut, letter, "c" + std::to_string(cut.isolated));
  for (int i = 0; i < 64; ++i) {
    p.AddRow("entry" + std::to_string(i), model.box()[i], lp::RowType::kEqual, b.at(i));
  }
  p.AddRow("normalization", model.mass(), lp::RowType::kEqual, 1);
  p.SetObjective(lp::Sense::kFeasibility, {});
  Membership m;
  m.lp = lp::Solve(p);
  m.member = m.lp.status == lp::Status::kOptimal;
  if (m.member) {
    m.decomposition = model.Extract(m.lp.primal);
    if (!m.decomposition->Reproduces(b)) {
      throw std::logic_error("decomposition does not reproduce box");
    }
  }
  return m;
}

Membership MemberS(const Box3& b, Cut cut) { return MemberLetter(b, cut, Letter::kS); }
Membership MemberNSBL(const Box3& b, Cut cut) { return MemberLetter(b, cut, Letter::kN); }
Membership MemberTOBL(const Box3& b, Cut cut) { return MemberLetter(b, cut, Letter::kT); }

Membership MemberT2(const Box3& b) { return TrilocalMixture(b, true); }
Membership MemberSvetlichny(const Box3& b) { return TrilocalMixture(b, false); }

ClassReport MemberClass(const Box3& b, const ClassSpec& spec) {
  ClassReport report;
  report.member = true;
  for (int k = 1; k <= 3; ++k) {
    report.cuts[k - 1] = MemberLetter(b, Cut{k}, spec.letters[k - 1]);
    report.member = report.member && report.cuts[k - 1].member;
  }
  return report;
}

}  // namespace wirenl
