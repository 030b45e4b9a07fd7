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

#include "wirenl/quantify.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "wirenl/errors.h"

namespace wirenl {
namespace {

void RequireNonsignaling(const Box3& b) {
  if (!CheckNonsignaling(b).ok()) throw NotNonsignaling("box violates no-signaling");
}

Vec64 Evaluate(const std::array<std::vector<lp::Term>, 64>& expr,
               const std::vector<Rational>& x) {
  Vec64 out;
  for (int i = 0; i < 64; ++i) {
    for (const auto& t : expr[i]) out[i] += t.coef * x[t.var];
  }
  return out;
}

// Runs fn(i) for i in [0, n) on the configured number of threads.
template <typename Fn>
void ParallelFor(int n, Fn fn) {
  const int workers = std::min(WorkerCount(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Output relabeling (c, d) of the second-measured party carrying eta `from`
// onto eta `to`: to(a1, x1, a2) = from(a1, x1, a2 + c + d a1).
std::optional<PartyRelabel> OrbitMap(uint8_t from, uint8_t to) {
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      bool ok = true;
      for (int p = 0; p < 8 && ok; ++p) {
        const int a1 = p >> 2 & 1, x1 = p >> 1 & 1, a2 = p & 1;
        ok = EvalEta(to, a1, x1, a2) == EvalEta(from, a1, x1, a2 ^ c ^ (d & a1));
      }
      if (ok) return PartyRelabel{0, c, d};
    }
  }
  return std::nullopt;
}

void VerifyRecord(const WNRecord& r) {
  const auto f = WiredChshFunctional(r.wiring);
  Rational value = 0;
  for (int i = 0; i < 64; ++i) value += f[i] * r.witness.at(i);
  if (value != r.optimum) throw std::logic_error("witness does not attain the optimum");
  for (const auto& d : r.certificates) {
    if (!d.Reproduces(r.witness)) throw std::logic_error("witness certificate fails");
  }
}

// Best beta over every full wiring of `d` and all CHSH indices, computed on
// the integer table scaled by the common denominator.
MwnBoxResult ScanWirings(const Box3& b, Direction d) {
  // Integer fast path: scale by the common denominator of the table.
  mpz_class lcm = 1;
  for (const auto& v : b.table()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  std::array<mpz_class, 64> scaled;
  for (int i = 0; i < 64; ++i) scaled[i] = b.at(i).get_num() * (lcm / b.at(i).get_den());

  MwnBoxResult best;
  bool have = false;
  mpz_class best_num;
  for (const Wiring& w : FullWirings(d)) {
    // Wired table in units of 1/lcm.
    std::array<mpz_class, 16> t;
    const int f = d.first, s = d.second, iso = d.isolated();
    for (int xp = 0; xp < 2; ++xp) {
      const int xf = EvalMode(w.mode, xp);
      for (int af = 0; af < 2; ++af) {
        const int xs = EvalGamma(w.gamma, af, xp);
        for (int as = 0; as < 2; ++as) {
          const int ap = EvalEta(w.eta, af, xp, as);
          for (int xi = 0; xi < 2; ++xi)
            for (int ai = 0; ai < 2; ++ai) {
              std::array<int, 3> a{}, x{};
              a[f - 1] = af;
              a[s - 1] = as;
              a[iso - 1] = ai;
              x[f - 1] = xf;
              x[s - 1] = xs;
              x[iso - 1] = xi;
              t[Index2(ap, ai, xp, xi)] += scaled[Index3(a, x)];
            }
        }
      }
    }
    std::array<mpz_class, 4> corr;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        corr[2 * x + y] = t[Index2(0, 0, x, y)] + t[Index2(1, 1, x, y)] -
                          t[Index2(0, 1, x, y)] - t[Index2(1, 0, x, y)];
    for (int k = 0; k < 8; ++k) {
      const ChshIndex idx = ChshIndex::FromFlat(k);
      mpz_class beta = 0;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          if (idx.t ^ (idx.r & x) ^ (idx.s & y) ^ (x & y)) {
            beta -= corr[2 * x + y];
          } else {
            beta += corr[2 * x + y];
          }
        }
      if (!have || beta > best_num) {
        have = true;
        best_num = beta;
        best.wiring = w;
        best.chsh = idx;
      }
    }
  }
  best.value = Rational(best_num, lcm);
  best.value.canonicalize();
  best.violation = best.value > 2;
  return best;
}

BoundRecord LowerBound(const Box3& b, const ClassSpec& spec, BoundKind kind) {
  RequireNonsignaling(b);
  BoundRecord rec;
  rec.kind = kind;
  rec.value = 0;
  bool have = false;
  for (int k = 1; k <= 3; ++k) {
    if (spec.letters[k - 1] == Letter::kS) continue;
    const Cut cut{k};
    for (const Direction d : {Direction{cut.lower(), cut.higher()},
                              Direction{cut.higher(), cut.lower()}}) {
      const MwnBoxResult m = ScanWirings(b, d);
      if (have && m.value <= rec.beta) continue;
      have = true;
      rec.cut = cut;
      rec.direction = d;
      rec.wiring = m.wiring;
      rec.chsh = m.chsh;
      rec.beta = m.value;
    }
  }
  if (!have) throw InvalidSpec("spec " + spec.ToString() + " has no N or T cut");
  if (rec.beta > 2) {
    rec.value = kind == BoundKind::kCostLower ? Rational((rec.beta - 2) / 2)
                                              : Rational((rec.beta - 2) / (rec.beta + 4));
  }
  return rec;
}

}  // namespace

int WorkerCount() {
  if (const char* env = std::getenv("WIRENL_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string ToString(BoundKind k) {
  switch (k) {
    case BoundKind::kSignalWeight:
      return "signal-weight";
    case BoundKind::kCostLower:
      return "cost-lower";
    case BoundKind::kRobustnessLower:
      return "robustness-lower";
  }
  return "?";
}

std::array<Rational, 64> WiredChshFunctional(const Wiring& w, ChshIndex idx) {
  std::array<Rational, 64> f;
  Vec64 unit;
  for (int i = 0; i < 64; ++i) {
    unit[i] = 1;
    f[i] = Chsh(ApplyLinear(w, unit), idx);
    unit[i] = 0;
  }
  return f;
}

WNRecord WnClass(const ClassSpec& spec, const Wiring& w) {
  lp::Problem p;
  const ClassModel model = ClassModel::Add(p, spec);
  p.AddRow("normalization", model.mass(), lp::RowType::kEqual, 1);
  const auto f = WiredChshFunctional(w);
  std::vector<lp::Term> objective;
  for (int i = 0; i < 64; ++i) {
    if (sgn(f[i]) == 0) continue;
    for (const auto& t : model.box()[i]) objective.push_back({t.var, t.coef * f[i]});
  }
  p.SetObjective(lp::Sense::kMaximize, objective);
  const lp::Result r = lp::Solve(p);
  if (r.status == lp::Status::kUnbounded) {
    throw UnboundedClass("wiring value LP is unbounded for " + spec.ToString());
  }
  if (r.status != lp::Status::kOptimal) {
    throw std::logic_error("wiring value LP infeasible for " + spec.ToString());
  }
  WNRecord rec{w, spec, r.objective, r.objective > 2 ? r.objective : Rational(0),
               Box3(Evaluate(model.box(), r.primal)), {}, std::nullopt};
  for (const auto& cut : model.cuts) rec.certificates.push_back(cut.Extract(r.primal));
  VerifyRecord(rec);
  return rec;
}

MwnClassResult MwnClass(const ClassSpec& spec, Direction d) {
  const std::vector<Wiring> wirings = CanonicalWirings(d);
  std::vector<int> rep_of(256);
  std::vector<int> reps;
  for (int e = 0; e < 256; ++e) {
    rep_of[e] = RelabelOrbit(wirings[e]).front().eta;
    if (rep_of[e] == e) reps.push_back(e);
  }
  std::vector<std::optional<WNRecord>> solved(256);
  ParallelFor(static_cast<int>(reps.size()),
              [&](int i) { solved[reps[i]] = WnClass(spec, wirings[reps[i]]); });

  MwnClassResult result;
  for (int e = 0; e < 256; ++e) {
    if (rep_of[e] == e) {
      result.records.push_back(*solved[e]);
      continue;
    }
    const WNRecord& base = *solved[rep_of[e]];
    const std::optional<PartyRelabel> map = OrbitMap(base.wiring.eta, wirings[e].eta);
    if (!map) throw std::logic_error("orbit map not found");
    Relabeling3 rel{};
    rel[d.second - 1] = *map;
    WNRecord rec = base;
    rec.wiring = wirings[e];
    rec.witness = Relabel(base.witness, rel);
    for (auto& c : rec.certificates) c = Relabel(c, d.second, *map);
    rec.derived_from = base.wiring;
    VerifyRecord(rec);
    result.records.push_back(std::move(rec));
  }
  result.mwn = 0;
  result.witness = wirings[0];
  for (const auto& r : result.records) {
    if (r.wn > result.mwn) {
      result.mwn = r.wn;
      result.witness = r.wiring;
    }
  }
  result.second_tier = 0;
  for (const auto& r : result.records) {
    if (r.wn < result.mwn && r.wn > result.second_tier) result.second_tier = r.wn;
  }
  return result;
}

MwnBoxResult MwnBox(const Box3& b, Direction d) {
  RequireNonsignaling(b);
  return ScanWirings(b, d);
}

BoundRecord SignalWeightBound(const Box3& b, Direction d) {
  RequireNonsignaling(b);
  const Cut cut{d.isolated()};
  lp::Problem p;
  const CutModel model = CutModel::Add(p, cut, Letter::kS, "c" + std::to_string(cut.isolated));
  for (int i = 0; i < 64; ++i) {
    p.AddRow("entry" + std::to_string(i), model.box()[i], lp::RowType::kEqual, b.at(i));
  }
  p.AddRow("normalization", model.mass(), lp::RowType::kEqual, 1);
  p.SetObjective(lp::Sense::kMinimize, model.SignalingWeight(d.second, d.first));
  const lp::Result r = lp::Solve(p);
  if (r.status != lp::Status::kOptimal) {
    throw NotFullyBilocal("box is not fully bilocal in cut " + cut.ToString());
  }
  BoundRecord rec;
  rec.kind = BoundKind::kSignalWeight;
  rec.cut = cut;
  rec.direction = d;
  rec.min_weight = r.objective;
  rec.value = 2 * r.objective + 2;
  rec.decomposition = model.Extract(r.primal);
  if (!rec.decomposition->Reproduces(b)) throw std::logic_error("decomposition fails");
  return rec;
}

namespace {

// Shared part of the cost and robustness LPs: class model, the free part B
// (64 nonnegative variables obeying no-signaling), and its mass p per input.
struct MonotoneModel {
  lp::Problem problem;
  ClassModel model;
  std::array<int, 64> noise;
  int p;
};

MonotoneModel BuildMonotone(const ClassSpec& spec) {
  if (!spec.HasNorT()) throw InvalidSpec("spec " + spec.ToString() + " has no N or T cut");
  MonotoneModel m;
  m.model = ClassModel::Add(m.problem, spec);
  std::array<std::vector<lp::Term>, 64> noise_expr;
  for (int i = 0; i < 64; ++i) {
    m.noise[i] = m.problem.AddVariable("B" + std::to_string(i));
    noise_expr[i] = {{m.noise[i], 1}};
  }
  m.p = m.problem.AddVariable("p");
  AddNonsignalingRows(m.problem, noise_expr, "noise");
  for (int x = 0; x < 8; ++x) {
    std::vector<lp::Term> row;
    for (int a = 0; a < 8; ++a) row.push_back({m.noise[a * 8 + x], 1});
    row.push_back({m.p, -1});
    m.problem.AddRow("noise_mass" + std::to_string(x), row, lp::RowType::kEqual, 0);
  }
  return m;
}

}  // namespace

Rational Cost3Exact(const Box3& b, const ClassSpec& spec) {
  MonotoneModel m = BuildMonotone(spec);
  RequireNonsignaling(b);
  // b = B + class part; class mass 1 - p.
  for (int i = 0; i < 64; ++i) {
    std::vector<lp::Term> row = m.model.box()[i];
    row.push_back({m.noise[i], 1});
    m.problem.AddRow("entry" + std::to_string(i), row, lp::RowType::kEqual, b.at(i));
  }
  std::vector<lp::Term> mass = m.model.mass();
  mass.push_back({m.p, 1});
  m.problem.AddRow("normalization", mass, lp::RowType::kEqual, 1);
  m.problem.SetObjective(lp::Sense::kMinimize, {{m.p, 1}});
  return lp::Solve(m.problem).objective;
}

Rational Robustness3Exact(const Box3& b, const ClassSpec& spec) {
  MonotoneModel m = BuildMonotone(spec);
  RequireNonsignaling(b);
  // B + (1 - p) b = class part with mass 1.
  for (int i = 0; i < 64; ++i) {
    std::vector<lp::Term> row;
    for (const auto& t : m.model.box()[i]) row.push_back({t.var, -t.coef});
    row.push_back({m.noise[i], 1});
    if (sgn(b.at(i)) != 0) row.push_back({m.p, -b.at(i)});
    m.problem.AddRow("entry" + std::to_string(i), row, lp::RowType::kEqual, -b.at(i));
  }
  m.problem.AddRow("normalization", m.model.mass(), lp::RowType::kEqual, 1);
  m.problem.SetObjective(lp::Sense::kMinimize, {{m.p, 1}});
  return lp::Solve(m.problem).objective;
}

BoundRecord CostLowerBound(const Box3& b, const ClassSpec& spec) {
  return LowerBound(b, spec, BoundKind::kCostLower);
}

BoundRecord RobustnessLowerBound(const Box3& b, const ClassSpec& spec) {
  return LowerBound(b, spec, BoundKind::kRobustnessLower);
}

}  // namespace wirenl
