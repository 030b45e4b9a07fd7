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

#ifndef WIRENL_TESTS_PROPERTIES_H_
#define WIRENL_TESTS_PROPERTIES_H_

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "test_support.h"
#include "wirenl/bell.h"
#include "wirenl/classes.h"
#include "wirenl/quantify.h"
#include "wirenl/wiring.h"

// Randomized property suites shared by property_test and the acceptance
// binary. Each suite runs at least kCases cases with exact assertions and
// records the first failing case.
namespace wirenl::testing {

inline constexpr int kCases = 200;

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return cases >= kCases && failures == 0; }
};

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  // Starts a case; Check calls until the next Case belong to it.
  void Case() {
    ++r_.cases;
    failed_ = false;
  }
  void Check(bool ok, const std::string& what) {
    if (ok || failed_) return;
    failed_ = true;
    ++r_.failures;
    if (r_.first_failure.empty()) {
      r_.first_failure = "case " + std::to_string(r_.cases) + ": " + what;
    }
  }
  PropertyResult Take() { return std::move(r_); }

 private:
  PropertyResult r_;
  bool failed_ = false;
};

inline std::string Str(const Rational& q) { return q.get_str(); }

// The two parties of the pair opposite `cut`, in increasing order.
inline std::pair<int, int> PairOf(Cut cut) {
  return cut.isolated == 1 ? std::pair{2, 3}
                           : cut.isolated == 2 ? std::pair{1, 3} : std::pair{1, 2};
}

// For identity/negated input mode and x2 = a1 + c + d x1, the canonical
// wiring that gives the same effective box on the box relabeled at the
// first-measured party; over a relabeling-closed class both have equal value.
inline Wiring CanonicalReduction(const Wiring& w) {
  const int c = w.gamma & 1, d = w.gamma >> 1 & 1;
  uint8_t tt = 0;
  for (int p = 0; p < 8; ++p) {
    const int a = p >> 2 & 1, xp = p >> 1 & 1, a2 = p & 1;
    tt |= static_cast<uint8_t>(EvalEta(w.eta, a ^ c ^ (d & xp), xp, a2) << p);
  }
  return Wiring{w.direction, InputMode::kIdentity, 0b0100, TruthTableToAnf3(tt)};
}

// Wired boxes of non-signaling boxes are non-signaling, for every canonical
// wiring of a random ordered pair.
inline PropertyResult NsPreservation(uint64_t seed = 101) {
  Tally t("ns-preservation");
  Rng rng(seed);
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const Box3 b = RandomNs3(rng);
    const Direction d = RandomDirection(rng);
    for (const Wiring& w : CanonicalWirings(d)) {
      t.Check(Apply(w, b).IsNonsignaling(), d.ToString() + " " + FormatWiring(w));
    }
  }
  return t.Take();
}

// Tracing one party of the bilocal pair leaves a local box: every CHSH value
// of the remaining pair lies in [-2, 2].
inline PropertyResult TracedBilocalIsLocal(uint64_t seed = 102) {
  Tally t("traced-bilocal-local");
  Rng rng(seed);
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const Cut cut{Uniform(rng, 1, 3)};
    const Box3 b = RandomFullyBilocal(rng, cut);
    const auto [p, q] = PairOf(cut);
    const int traced = Uniform(rng, 0, 1) ? p : q;
    const Box2 m = Marginal(b, traced, Uniform(rng, 0, 1));
    for (int k = 0; k < 8; ++k) {
      const Rational beta = Chsh(m, ChshIndex::FromFlat(k));
      t.Check(beta <= 2 && beta >= -2, "beta " + Str(beta));
    }
  }
  return t.Take();
}

// NSBL => TOBL => S in every cut, each positive answer carrying a
// decomposition that reproduces the box.
inline PropertyResult InclusionChain(uint64_t seed = 103) {
  Tally t("inclusion-chain");
  Rng rng(seed);
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const Cut cut{Uniform(rng, 1, 3)};
    Box3 b;
    switch (i % 3) {
      case 0:
        b = Relabel(RandomNsbl(rng, cut), RandomRelabeling(rng));
        break;
      case 1:
        b = RandomNs3(rng);
        break;
      default:
        b = Mix(RandomNsbl(rng, cut), RandomNs3(rng), Frac(Uniform(rng, 1, 7), 8));
    }
    const Membership n = MemberNSBL(b, cut);
    const Membership o = MemberTOBL(b, cut);
    const Membership s = MemberS(b, cut);
    t.Check(!n.member || o.member, "NSBL member outside TOBL at " + cut.ToString());
    t.Check(!o.member || s.member, "TOBL member outside S at " + cut.ToString());
    t.Check(i % 3 != 0 || n.member, "NSBL product rejected");
    for (const Membership* m : {&n, &o, &s}) {
      t.Check(m->member == m->decomposition.has_value(), "certificate presence");
      t.Check(!m->decomposition || m->decomposition->Reproduces(b), "certificate mismatch");
    }
  }
  return t.Take();
}

// TOBL (hence NSBL) members across a cut stay local after any wiring of the
// opposite pair: all canonical wirings in both orders keep every CHSH value
// at most 2, and random full wirings give bipartite-local boxes.
inline PropertyResult WiringClosure(uint64_t seed = 104) {
  Tally t("tobl-nsbl-wiring-closure");
  Rng rng(seed);
  const char* reps[] = {"tts_box1.box", "tts_box2.box", "nns_box1.box", "nns_box2.box"};
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    // The representatives are TOBL across 1:23 and 2:13.
    const Cut cut{i % 4 == 3 ? 3 : Uniform(rng, 1, 2)};
    Box3 b = RandomNsbl(rng, cut);
    if (cut.isolated != 3) {
      const Box3 rep = Relabel(FixtureBox(reps[Uniform(rng, 0, 3)]), RandomRelabeling(rng));
      b = Mix(rep, b, Frac(Uniform(rng, 4, 8), 8));
    }
    const Membership m = MemberTOBL(b, cut);
    t.Check(m.member, "pool box is not TOBL at " + cut.ToString());
    const auto [p, q] = PairOf(cut);
    for (const Direction d : {Direction{p, q}, Direction{q, p}}) {
      for (const Wiring& w : CanonicalWirings(d)) {
        const Rational beta = MaxChsh(Apply(w, b)).first;
        t.Check(beta <= 2, d.ToString() + " " + FormatWiring(w) + " beta " + Str(beta));
      }
    }
    for (int k = 0; k < 2; ++k) {
      const Wiring w = RandomFullWiring(rng, Uniform(rng, 0, 1) ? Direction{p, q}
                                                                 : Direction{q, p});
      t.Check(BipartiteLocal(Apply(w, b)).status == lp::Status::kOptimal,
              "non-local after " + FormatWiring(w));
    }
  }
  return t.Take();
}

// Class value of a wiring with bijective x2 = a1 + c + d x1 and identity or
// negated input mode equals that of its canonical reduction.
inline PropertyResult WiringValueReduction(uint64_t seed = 105) {
  Tally t("wn-equal-across-gamma");
  Rng rng(seed);
  const char* specs[] = {"NNN", "NNS", "NSN", "SNN", "NSS", "NTS"};
  std::map<std::tuple<int, Direction, int>, Rational> canonical;
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const int s = i % 6;
    const ClassSpec spec = ClassSpec::Parse(specs[s]);
    Wiring w = RandomFullWiring(rng, RandomDirection(rng));
    w.mode = Uniform(rng, 0, 1) ? InputMode::kNegated : InputMode::kIdentity;
    w.gamma = static_cast<uint8_t>(0b0100 | Uniform(rng, 0, 3));
    const Wiring c = CanonicalReduction(w);
    const auto key = std::tuple(s, c.direction, static_cast<int>(c.eta));
    auto it = canonical.find(key);
    if (it == canonical.end()) it = canonical.emplace(key, WnClass(spec, c).optimum).first;
    const WNRecord r = WnClass(spec, w);
    t.Check(r.optimum == it->second, std::string(specs[s]) + " " + FormatWiring(w) + ": " +
                                         Str(r.optimum) + " vs " + Str(it->second));
    t.Check(r.wn == (r.optimum > 2 ? r.optimum : Rational(0)), "wn clipping");
  }
  return t.Take();
}

// The signaling-weight bound dominates the best wiring value of fully
// bilocal boxes.
inline PropertyResult BoundDominance(uint64_t seed = 106) {
  Tally t("signal-bound-dominates-mwn-box");
  Rng rng(seed);
  const char* pool[] = {"tight_bound.box", "tts_box1.box", "tts_box2.box", "nns_box1.box",
                        "nns_box2.box"};
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const Box3 base = Relabel(FixtureBox(pool[i % 5]), RandomRelabeling(rng));
    const Box3 b = Mix(base, RandomNsbl(rng, Cut{3}), Frac(Uniform(rng, 4, 8), 8));
    t.Check(MemberS(b, Cut{3}).member, "pool box is not S at 3:12");
    const Direction d = Uniform(rng, 0, 1) ? Direction{1, 2} : Direction{2, 1};
    const MwnBoxResult m = MwnBox(b, d);
    const BoundRecord bound = SignalWeightBound(b, d);
    t.Check(m.value <= bound.value, d.ToString() + " mwn " + Str(m.value) + " > bound " +
                                        Str(bound.value));
    t.Check(bound.value == 2 * bound.min_weight + 2, "bound formula");
  }
  return t.Take();
}

// cost3 >= cost2(wired) >= (beta - 2)/2 and robustness3 >= robustness2(wired)
// >= (beta - 2)/(beta + 4), for wirings of the pair opposite an N or T cut.
inline PropertyResult MonotoneChains(uint64_t seed = 107) {
  Tally t("cost-robustness-chains");
  Rng rng(seed);
  // At most one T letter keeps the exact LPs fast.
  const char* specs[] = {"NNN", "NNS", "NSN", "SNN", "NNT", "NSS", "TNS"};
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const ClassSpec spec = ClassSpec::Parse(specs[i % 7]);
    const Box3 b = RandomNs3(rng);
    std::vector<int> cuts;
    for (int c = 1; c <= 3; ++c) {
      if (spec.at(Cut{c}) != Letter::kS) cuts.push_back(c);
    }
    const Cut cut{cuts[Uniform(rng, 0, static_cast<int>(cuts.size()) - 1)]};
    const auto [p, q] = PairOf(cut);
    // Random wirings of these boxes are almost always local; the best one
    // makes every term of the chain non-trivial.
    const Direction d = Uniform(rng, 0, 1) ? Direction{p, q} : Direction{q, p};
    const Wiring w = i % 4 == 0 ? RandomFullWiring(rng, d) : MwnBox(b, d).wiring;
    const Box2 e = Apply(w, b);
    const Rational beta = MaxChsh(e).first;
    const Rational c3 = Cost3Exact(b, spec), c2 = Cost2(e);
    const Rational r3 = Robustness3Exact(b, spec), r2 = Robustness2(e);
    const std::string at = spec.ToString() + " " + FormatWiring(w);
    t.Check(c3 >= c2, at + ": cost3 " + Str(c3) + " < cost2 " + Str(c2));
    t.Check(c2 >= (beta - 2) / 2, at + ": cost2 below (beta-2)/2");
    t.Check(r3 >= r2, at + ": robustness3 " + Str(r3) + " < robustness2 " + Str(r2));
    t.Check(r2 >= (beta - 2) / (beta + 4), at + ": robustness2 below (beta-2)/(beta+4)");
    t.Check(c3 >= 0 && c3 <= 1 && r3 >= 0, at + ": out of range");
  }
  return t.Take();
}

// Twirling keeps beta_rst, kills the other (r', s') pairs, lands on the
// isotropic box with alpha = (beta + 4)/8 and does not raise cost or
// robustness.
inline PropertyResult TwirlIdentities(uint64_t seed = 108) {
  Tally t("twirl-identities");
  Rng rng(seed);
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const Box2 b = RandomNs2(rng);
    const int r = Uniform(rng, 0, 1), s = Uniform(rng, 0, 1);
    const Box2 avg = TwirlAverage(b, r, s);
    const IsotropicBox iso = Twirl(b, r, s);
    t.Check(iso.box() == avg, "isotropic box differs from the average");
    t.Check(TwirlAverage(avg, r, s) == avg, "not idempotent");
    for (int k = 0; k < 8; ++k) {
      const ChshIndex idx = ChshIndex::FromFlat(k);
      const Rational expected = idx.r == r && idx.s == s ? Chsh(b, idx) : Rational(0);
      t.Check(Chsh(avg, idx) == expected, "beta_" + idx.ToString());
    }
    t.Check(iso.alpha == (Chsh(b, iso.idx) + 4) / 8, "alpha");
    t.Check(Chsh(avg, {r, s, 0}) == 8 * iso.alpha - 4 || Chsh(avg, {r, s, 1}) == 8 * iso.alpha - 4,
            "beta = 8 alpha - 4");
    t.Check(Cost2(avg) <= Cost2(b), "cost raised by twirling");
    t.Check(Robustness2(avg) <= Robustness2(b), "robustness raised by twirling");
  }
  return t.Take();
}

// Isotropic boxes with alpha in [1/2, 1]: cost = max(0, 4 alpha - 3) =
// max(0, (beta - 2)/2) and robustness = max(0, (beta - 2)/(beta + 4)).
inline PropertyResult IsotropicClosedForms(uint64_t seed = 109) {
  Tally t("isotropic-closed-forms");
  Rng rng(seed);
  for (int i = 0; i < kCases; ++i) {
    t.Case();
    const Rational alpha = Frac(Uniform(rng, 60, 120), 120);
    const ChshIndex idx = ChshIndex::FromFlat(Uniform(rng, 0, 7));
    const Box2 b = IsoBox(alpha, idx.r, idx.s, idx.t);
    const Rational beta = Chsh(b, idx);
    t.Check(beta == 8 * alpha - 4, "beta");
    const Rational cost = 4 * alpha - 3 > 0 ? Rational(4 * alpha - 3) : Rational(0);
    const Rational rob = beta > 2 ? Rational((beta - 2) / (beta + 4)) : Rational(0);
    t.Check(Cost2(b) == cost, "cost " + Str(Cost2(b)) + " at alpha " + Str(alpha));
    t.Check(cost == (beta > 2 ? Rational((beta - 2) / 2) : Rational(0)), "cost vs beta");
    t.Check(Robustness2(b) == rob, "robustness " + Str(Robustness2(b)) + " at alpha " +
                                       Str(alpha));
  }
  return t.Take();
}

// Every suite with its default seed.
inline std::vector<PropertyResult (*)()> AllProperties() {
  return {[] { return NsPreservation(); },       [] { return TracedBilocalIsLocal(); },
          [] { return InclusionChain(); },       [] { return WiringClosure(); },
          [] { return WiringValueReduction(); }, [] { return BoundDominance(); },
          [] { return MonotoneChains(); },       [] { return TwirlIdentities(); },
          [] { return IsotropicClosedForms(); }};
}

}  // namespace wirenl::testing

#endif  // WIRENL_TESTS_PROPERTIES_H_
