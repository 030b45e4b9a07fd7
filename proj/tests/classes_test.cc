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

#include <gtest/gtest.h>

#include "test_support.h"
#include "wirenl/bell.h"
#include "wirenl/classes.h"
#include "wirenl/errors.h"
#include "wirenl/fixtures.h"

namespace wirenl {
namespace {

using testing::Rng;

// a1 + a2 + a3 = x1 x2 + x2 x3 + x1 x3 with probability 1/4 per allowed output.
Box3 SvetlichnyBox() {
  Vec64 t;
  for (int i = 0; i < 64; ++i) {
    const int a = OutputOf(i, 1) ^ OutputOf(i, 2) ^ OutputOf(i, 3);
    const int x1 = InputOf(i, 1), x2 = InputOf(i, 2), x3 = InputOf(i, 3);
    if (a == ((x1 & x2) ^ (x2 & x3) ^ (x1 & x3))) t[i] = Rational(1, 4);
  }
  return Box3(t);
}

// Svetlichny functional sum (-1)^(x1x2 + x2x3 + x1x3) <A B C>; at most 4 on
// boxes that are bilocal in some cut per term.
Rational SvetlichnyValue(const Box3& b) {
  Rational v = 0;
  for (int i = 0; i < 64; ++i) {
    const int a = OutputOf(i, 1) ^ OutputOf(i, 2) ^ OutputOf(i, 3);
    const int x1 = InputOf(i, 1), x2 = InputOf(i, 2), x3 = InputOf(i, 3);
    const int sign = a ^ (x1 & x2) ^ (x2 & x3) ^ (x1 & x3);
    v += sign ? -b.at(i) : b.at(i);
  }
  return v;
}

const Box2& Pr() {
  static const Box2* pr = new Box2(VertexB(0, 0, 0));
  return *pr;
}

TEST(ClassesTest, CutAndSpecText) {
  EXPECT_EQ(Cut{3}.ToString(), "3:12");
  EXPECT_EQ(Cut{2}.ToString(), "2:13");
  EXPECT_EQ(Cut{1}.ToString(), "1:23");
  EXPECT_EQ(Cut::Parse("2").isolated, 2);
  EXPECT_EQ(Cut::Parse("1:23").isolated, 1);
  EXPECT_THROW(Cut::Parse("1:32"), ParseError);
  EXPECT_THROW(Cut::Parse("4"), ParseError);
  const ClassSpec s = ClassSpec::Parse("TNS");
  EXPECT_EQ(s.at(Cut{1}), Letter::kT);
  EXPECT_EQ(s.at(Cut{2}), Letter::kN);
  EXPECT_EQ(s.at(Cut{3}), Letter::kS);
  EXPECT_EQ(s.ToString(), "TNS");
  EXPECT_TRUE(s.HasNorT());
  EXPECT_FALSE(ClassSpec::Parse("SSS").HasNorT());
  EXPECT_THROW(ClassSpec::Parse("TTX"), ParseError);
  EXPECT_THROW(ClassSpec::Parse("TT"), ParseError);
}

TEST(ClassesTest, PairBoxFamilies) {
  EXPECT_EQ(PairBox({PairFamily::kNs2, 20}), Ns2Vertices()[20]);
  EXPECT_EQ(PairBox({PairFamily::kTwoWay, 77}), DetTwoWay()[77]);
  EXPECT_EQ(PairBox({PairFamily::kOneWayForward, 5}), DetOneWay(true)[5]);
  EXPECT_EQ(PairBox({PairFamily::kOneWayBackward, 5}), DetOneWay(false)[5]);
}

TEST(ClassesTest, FullyBilocalExamples) {
  const auto m = MemberS(FixtureBox("tight_bound.box"), Cut{3});
  ASSERT_TRUE(m.member);
  ASSERT_TRUE(m.decomposition);
  EXPECT_TRUE(m.decomposition->Reproduces(FixtureBox("tight_bound.box")));
  // Uniform mixture of PR(12) x deterministic party 3.
  const Box3 ghz = Mix(Product(3, DeterministicLocal(0, 0), Pr()),
                       Product(3, DeterministicLocal(1, 1), Pr()), Rational(1, 2));
  EXPECT_TRUE(MemberS(ghz, Cut{3}).member);
  EXPECT_TRUE(MemberNSBL(ghz, Cut{3}).member);
  // PR between parties 1 and 3 with party 2 deterministic, across 3:12: the
  // 13 marginal is non-local, so no 3:12 bilocal form exists.
  const Box3 pr13 = Product(2, DeterministicLocal(0, 1), Pr());
  EXPECT_EQ(BipartiteLocal(Marginal(pr13, 2, 0)).status, lp::Status::kInfeasible);
  const auto s = MemberS(pr13, Cut{3});
  EXPECT_FALSE(s.member);
  EXPECT_FALSE(s.decomposition);
  EXPECT_TRUE(MemberS(pr13, Cut{2}).member);
}

TEST(ClassesTest, NsblExamples) {
  const Box3 local = Product(DeterministicLocal(0, 1), DeterministicLocal(1, 1),
                             DeterministicLocal(1, 0));
  for (int c = 1; c <= 3; ++c) EXPECT_TRUE(MemberNSBL(local, Cut{c}).member);
  const Box3 pr12 = Product(3, DeterministicLocal(1, 0), Pr());
  const auto in = MemberNSBL(pr12, Cut{3});
  ASSERT_TRUE(in.member);
  EXPECT_TRUE(in.decomposition->Reproduces(pr12));
  EXPECT_EQ(BipartiteLocal(Marginal(pr12, 3, 0)).status, lp::Status::kInfeasible);
  EXPECT_FALSE(MemberNSBL(pr12, Cut{1}).member);
  EXPECT_FALSE(MemberNSBL(pr12, Cut{2}).member);
}

TEST(ClassesTest, TimeOrderedExamples) {
  EXPECT_FALSE(MemberTOBL(FixtureBox("trilocal.box"), Cut{3}).member);
  for (int c : {1, 2}) {
    const auto m = MemberTOBL(FixtureBox("tts_box1.box"), Cut{c});
    ASSERT_TRUE(m.member) << c;
    ASSERT_TRUE(m.decomposition);
    EXPECT_TRUE(m.decomposition->Reproduces(FixtureBox("tts_box1.box")));
    // Both orderings are recorded and reproduce the same box.
    for (const auto& t : m.decomposition->terms) EXPECT_EQ(t.pair.size(), 2u);
  }
  // NSBL members are TOBL members.
  const Box3 pr12 = Product(3, DeterministicLocal(1, 0), Pr());
  EXPECT_TRUE(MemberTOBL(pr12, Cut{3}).member);
}

TEST(ClassesTest, MultiCutClasses) {
  const Box3 t1 = FixtureBox("trilocal.box");
  EXPECT_TRUE(MemberT2(t1).member);
  EXPECT_TRUE(MemberSvetlichny(t1).member);
  const Box3 sv = SvetlichnyBox();
  EXPECT_EQ(SvetlichnyValue(sv), 8);
  EXPECT_FALSE(MemberSvetlichny(sv).member);
  EXPECT_FALSE(MemberT2(sv).member);
  // Noisy versions above the bound stay outside.
  for (int k = 5; k <= 8; ++k) {
    const Box3 noisy = Mix(sv, Box3(), testing::Frac(k, 8));
    EXPECT_GT(SvetlichnyValue(noisy), 4);
    EXPECT_FALSE(MemberSvetlichny(noisy).member) << k;
  }
  // A TOBL box in one cut is a T2 member.
  EXPECT_TRUE(MemberT2(FixtureBox("tts_box1.box")).member);
}

TEST(ClassesTest, ClassReports) {
  EXPECT_TRUE(MemberClass(FixtureBox("tts_box1.box"), ClassSpec::Parse("TTS")).member);
  EXPECT_TRUE(MemberClass(FixtureBox("tts_box2.box"), ClassSpec::Parse("TTS")).member);
  EXPECT_TRUE(MemberClass(FixtureBox("nns_box1.box"), ClassSpec::Parse("NNS")).member);
  EXPECT_TRUE(MemberClass(FixtureBox("nns_box2.box"), ClassSpec::Parse("NNS")).member);
  EXPECT_TRUE(MemberClass(Box3(), ClassSpec::Parse("NNN")).member);
  const auto r = MemberClass(FixtureBox("trilocal.box"), ClassSpec::Parse("SST"));
  EXPECT_FALSE(r.member);
  EXPECT_FALSE(r.cuts[2].member);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(MemberLetter(Box3(), Cut{c + 1}, Letter::kN).member, true);
}

TEST(ClassesTest, SignalingBoxesAreRejected) {
  // Party 2 outputs party 1's input.
  Vec16 t;
  for (int a = 0; a < 2; ++a)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) t[Index2(a, x, x, y)] += Rational(1, 2);
  const Box3 b = Product(3, DeterministicLocal(0, 0), Box2(t));
  EXPECT_THROW(MemberS(b, Cut{3}), NotNonsignaling);
  EXPECT_THROW(MemberNSBL(b, Cut{1}), NotNonsignaling);
  EXPECT_THROW(MemberTOBL(b, Cut{2}), NotNonsignaling);
  EXPECT_THROW(MemberT2(b), NotNonsignaling);
  EXPECT_THROW(MemberSvetlichny(b), NotNonsignaling);
  EXPECT_THROW(MemberClass(b, ClassSpec::Parse("SSS")), NotNonsignaling);
}

TEST(ClassesTest, DecompositionText) {
  const Box3 pr12 = Product(3, DeterministicLocal(1, 0), Pr());
  const auto m = MemberNSBL(pr12, Cut{3});
  ASSERT_TRUE(m.decomposition);
  ASSERT_EQ(m.decomposition->terms.size(), 1u);
  EXPECT_EQ(m.decomposition->ToText(), "weight 1 : L1[2] ⊗ NS12[16]\n");
  const auto s = MemberS(pr12, Cut{3});
  ASSERT_TRUE(s.decomposition);
  EXPECT_NE(s.decomposition->ToText().find("TW12["), std::string::npos);
  const auto t = MemberTOBL(pr12, Cut{3});
  ASSERT_TRUE(t.decomposition);
  EXPECT_NE(t.decomposition->ToText().find("OW12["), std::string::npos);
  EXPECT_NE(t.decomposition->ToText().find("OW21["), std::string::npos);
}

TEST(ClassesTest, RelabeledDecompositionsReproduceRelabeledBoxes) {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const Cut cut{testing::Uniform(rng, 1, 3)};
    const Box3 b = testing::RandomNsbl(rng, cut);
    const Letter letter = static_cast<Letter>(testing::Uniform(rng, 0, 2));
    const auto m = MemberLetter(b, cut, letter);
    ASSERT_TRUE(m.member);
    const int party = testing::Uniform(rng, 1, 3);
    const PartyRelabel r{testing::Uniform(rng, 0, 1), testing::Uniform(rng, 0, 1),
                         testing::Uniform(rng, 0, 1)};
    Relabeling3 full{};
    full[party - 1] = r;
    EXPECT_TRUE(Relabel(*m.decomposition, party, r).Reproduces(Relabel(b, full)));
  }
}

TEST(ClassesTest, ReproducesRejectsWrongBoxes) {
  const Box3 pr12 = Product(3, DeterministicLocal(1, 0), Pr());
  const auto m = MemberNSBL(pr12, Cut{3});
  ASSERT_TRUE(m.decomposition);
  EXPECT_FALSE(m.decomposition->Reproduces(Box3()));
  Decomposition d = *m.decomposition;
  d.terms[0].weight = Rational(1, 2);
  EXPECT_FALSE(d.Reproduces(pr12));
}

}  // namespace
}  // namespace wirenl
