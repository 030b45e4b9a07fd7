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

#ifndef WIRENL_CLASSES_H_
#define WIRENL_CLASSES_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wirenl/box.h"
#include "wirenl/lp.h"

namespace wirenl {

// Bipartition isolating one party: 1:23, 2:13 or 3:12.
struct Cut {
  int isolated = 3;

  // The other two parties in increasing order.
  int lower() const { return isolated == 1 ? 2 : 1; }
  int higher() const { return isolated == 3 ? 2 : 3; }
  std::string ToString() const;
  static Cut Parse(std::string_view text);  // "3:12" or "3"; throws ParseError

  friend bool operator==(const Cut&, const Cut&) = default;
};

// N: non-signaling bilocal, T: time-ordered bilocal, S: fully bilocal.
enum class Letter { kN, kT, kS };

// One letter per cut, in cut order 1:23, 2:13, 3:12.
struct ClassSpec {
  std::array<Letter, 3> letters{Letter::kS, Letter::kS, Letter::kS};

  Letter at(Cut c) const { return letters[c.isolated - 1]; }
  bool HasNorT() const;
  std::string ToString() const;
  static ClassSpec Parse(std::string_view text);  // e.g. "TTS"; throws ParseError
};

enum class PairFamily {
  kNs2,             // Ns2Vertices()
  kTwoWay,          // DetTwoWay()
  kOneWayForward,   // DetOneWay(true): lower party signals to higher
  kOneWayBackward,  // DetOneWay(false)
};

struct PairStrategy {
  PairFamily family;
  int index;
};

// Box2 of a pair strategy over (lower, higher).
const Box2& PairBox(const PairStrategy& s);

// weight * DetLocal1()[local] (for `isolated`) x pair strategy. Time-ordered
// terms carry two pair strategies, one for each ordering, which must
// reproduce the same box.
struct DecompositionTerm {
  Rational weight;
  int isolated;
  int local;
  std::vector<PairStrategy> pair;
};

struct Decomposition {
  std::vector<DecompositionTerm> terms;

  // Sum of weighted products using pair slot `slot` (0 or 1).
  Vec64 Reconstruct(int slot = 0) const;
  // Positive weights summing to 1 and every slot reproducing `b` exactly.
  bool Reproduces(const Box3& b) const;
  // Lines "weight p/q : L1[i] ⊗ FAMILY[j] (⊗ FAMILY[k])". Families are named
  // NS<ij>, TW<ij> and OW<ij>, where ij are party numbers and OW<ij> signals
  // at most from i to j.
  std::string ToText() const;
};

// Image of a decomposition under a local relabeling of one party; strategy
// families are closed under these maps.
Decomposition Relabel(const Decomposition& d, int party, const PartyRelabel& r);

struct Membership {
  bool member = false;
  lp::Result lp;
  std::optional<Decomposition> decomposition;
};

// Decomposition of one cut embedded in a larger LP.
class CutModel {
 public:
  // Adds the columns (and, for T, the ordering-consistency rows) of `letter`
  // in `cut` to `p`. Column families:
  //   N: DetLocal1 x Ns2Vertices                                   (96)
  //   S: DetLocal1 x DetTwoWay                                     (1024)
  //   T: DetLocal1 x DetOneWay(forward), DetLocal1 x DetOneWay(backward)
  // The time-ordered model uses marginal weights: w_A(k, j) on forward terms
  // and w_B(k, l) on backward terms, constrained to give the same box and the
  // same mass for every local strategy k. This is equivalent to weights
  // q(k, j, l) over triples sharing one weight per term: marginals of q
  // satisfy the constraints, and conversely q = w_A w_B / mass_k works.
  static CutModel Add(lp::Problem& p, Cut cut, Letter letter, const std::string& prefix);

  Cut cut() const { return cut_; }
  Letter letter() const { return letter_; }
  // Decomposition sum for each Box3 entry (forward terms for T).
  const std::array<std::vector<lp::Term>, 64>& box() const { return box_; }
  // Total weight.
  const std::vector<lp::Term>& mass() const { return mass_; }
  // Weight on two-way terms whose signaling includes the given direction
  // between the pair parties (S only).
  std::vector<lp::Term> SignalingWeight(int from, int to) const;

  // Decomposition read from exact variable values.
  Decomposition Extract(const std::vector<Rational>& x) const;

 private:
  struct Column {
    int var;
    int local;
    PairStrategy pair;
    int side;  // 0: forward / only, 1: backward (T only)
  };
  Cut cut_;
  Letter letter_ = Letter::kS;
  std::vector<Column> columns_;
  std::array<std::vector<lp::Term>, 64> box_;
  std::vector<lp::Term> mass_;
};

// All three cut models over one shared box expression. Rows equate the box
// sums of every cut with those of cut 1:23, and NS3 rows are added when no
// cut has an N or T letter. Normalization is left to the caller.
struct ClassModel {
  std::vector<CutModel> cuts;
  const std::array<std::vector<lp::Term>, 64>& box() const { return cuts[0].box(); }
  const std::vector<lp::Term>& mass() const { return cuts[0].mass(); }

  static ClassModel Add(lp::Problem& p, const ClassSpec& spec);
};

// The no-signaling equalities on a 64-term linear expression.
void AddNonsignalingRows(lp::Problem& p, const std::array<std::vector<lp::Term>, 64>& box,
                         const std::string& prefix);

// Per-cut membership; the box must be non-signaling (NotNonsignaling).
Membership MemberS(const Box3& b, Cut cut);
Membership MemberNSBL(const Box3& b, Cut cut);
Membership MemberTOBL(const Box3& b, Cut cut);
Membership MemberLetter(const Box3& b, Cut cut, Letter letter);
// Mixtures of DetLocal1 x DetOneWay (either direction) over all three cuts.
Membership MemberT2(const Box3& b);
// Mixtures of DetLocal1 x DetTwoWay over all three cuts.
Membership MemberSvetlichny(const Box3& b);

struct ClassReport {
  bool member = false;
  std::array<Membership, 3> cuts;  // indexed by isolated party - 1
};
ClassReport MemberClass(const Box3& b, const ClassSpec& spec);

}  // namespace wirenl

#endif  // WIRENL_CLASSES_H_
