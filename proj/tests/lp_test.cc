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

#include <optional>

#include "test_support.h"
#include "wirenl/errors.h"
#include "wirenl/lp.h"

namespace wirenl {
namespace {

using lp::Problem;
using lp::RowType;
using lp::Sense;
using lp::Status;
using testing::Rng;

struct DenseRow {
  std::vector<Rational> a;
  RowType type;
  Rational rhs;
};

// Solves the square system by Gaussian elimination; nullopt if singular.
std::optional<std::vector<Rational>> SolveSquare(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

bool Feasible(const std::vector<DenseRow>& rows, const std::vector<Rational>& x) {
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& r : rows) {
    Rational lhs = 0;
    for (size_t j = 0; j < x.size(); ++j) lhs += r.a[j] * x[j];
    if (r.type == RowType::kEqual && lhs != r.rhs) return false;
    if (r.type == RowType::kLessEqual && lhs > r.rhs) return false;
    if (r.type == RowType::kGreaterEqual && lhs < r.rhs) return false;
  }
  return true;
}

// Best vertex over all choices of n tight constraints (rows or x_j = 0).
// The rows must bound the feasible set.
std::optional<Rational> BruteForceMax(const std::vector<DenseRow>& rows,
                                      const std::vector<Rational>& c) {
  const int n = static_cast<int>(c.size());
  std::vector<DenseRow> all = rows;
  for (int j = 0; j < n; ++j) {
    DenseRow r{std::vector<Rational>(n), RowType::kEqual, 0};
    r.a[j] = 1;
    all.push_back(r);
  }
  const int m = static_cast<int>(all.size());
  std::optional<Rational> best;
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(mask) != n) continue;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        a.push_back(all[i].a);
        b.push_back(all[i].rhs);
      }
    }
    const auto x = SolveSquare(a, b);
    if (!x || !Feasible(rows, *x)) continue;
    Rational v = 0;
    for (int j = 0; j < n; ++j) v += c[j] * (*x)[j];
    if (!best || v > *best) best = v;
  }
  return best;
}

Problem Build(const std::vector<DenseRow>& rows, const std::vector<Rational>& c, Sense sense) {
  Problem p;
  for (size_t j = 0; j < c.size(); ++j) p.AddVariable("x" + std::to_string(j));
  for (size_t i = 0; i < rows.size(); ++i) {
    std::vector<lp::Term> t;
    for (size_t j = 0; j < c.size(); ++j) {
      if (rows[i].a[j] != 0) t.push_back({static_cast<int>(j), rows[i].a[j]});
    }
    p.AddRow("r" + std::to_string(i), t, rows[i].type, rows[i].rhs);
  }
  std::vector<lp::Term> obj;
  for (size_t j = 0; j < c.size(); ++j) obj.push_back({static_cast<int>(j), c[j]});
  p.SetObjective(sense, obj);
  return p;
}

TEST(LpTest, SmallMaximization) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3.
  Problem p;
  const int x = p.AddVariable("x"), y = p.AddVariable("y");
  p.AddRow("a", {{x, 1}, {y, 1}}, RowType::kLessEqual, 4);
  p.AddRow("b", {{x, 1}, {y, 3}}, RowType::kLessEqual, 6);
  p.AddRow("c", {{x, 1}}, RowType::kLessEqual, 3);
  p.SetObjective(Sense::kMaximize, {{x, 3}, {y, 2}});
  const auto r = lp::Solve(p);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_EQ(r.objective, 11);
  EXPECT_EQ(r.primal[x], 3);
  EXPECT_EQ(r.primal[y], 1);
  EXPECT_TRUE(lp::CheckCertificate(p, r));
}

TEST(LpTest, ExactFractions) {
  // min x + y s.t. 3x + y >= 1, x + 3y >= 1: optimum 1/2 at (1/4, 1/4).
  Problem p;
  const int x = p.AddVariable("x"), y = p.AddVariable("y");
  p.AddRow("a", {{x, 3}, {y, 1}}, RowType::kGreaterEqual, 1);
  p.AddRow("b", {{x, 1}, {y, 3}}, RowType::kGreaterEqual, 1);
  p.SetObjective(Sense::kMinimize, {{x, 1}, {y, 1}});
  const auto r = lp::Solve(p);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_EQ(r.objective, Rational(1, 2));
  EXPECT_EQ(r.primal[x], Rational(1, 4));
}

TEST(LpTest, FreeVariablesAndDuplicateTerms) {
  // max z s.t. z - x <= -1 with x + x = 2 (x = 1), z free.
  Problem p;
  const int z = p.AddVariable("z", false), x = p.AddVariable("x");
  p.AddRow("a", {{z, 1}, {x, -1}}, RowType::kLessEqual, -1);
  p.AddRow("b", {{x, 1}, {x, 1}}, RowType::kEqual, 2);
  p.SetObjective(Sense::kMaximize, {{z, 1}});
  const auto r = lp::Solve(p);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_EQ(r.objective, 0);
  EXPECT_EQ(r.primal[z], 0);
}

TEST(LpTest, InfeasibleHasFarkasCertificate) {
  Problem p;
  const int x = p.AddVariable("x"), y = p.AddVariable("y");
  p.AddRow("a", {{x, 1}, {y, 1}}, RowType::kLessEqual, 1);
  p.AddRow("b", {{x, 1}, {y, 1}}, RowType::kGreaterEqual, 2);
  p.SetObjective(Sense::kMaximize, {{x, 1}});
  const auto r = lp::Solve(p);
  EXPECT_EQ(r.status, Status::kInfeasible);
  ASSERT_EQ(r.dual.size(), 2u);
  EXPECT_TRUE(lp::CheckCertificate(p, r));
  // b^T y < 0 with the maximize sign pattern.
  EXPECT_LT(r.dual[0] * 1 + r.dual[1] * 2, 0);
}

TEST(LpTest, UnboundedHasRay) {
  Problem p;
  const int x = p.AddVariable("x"), y = p.AddVariable("y");
  p.AddRow("a", {{x, 1}, {y, -1}}, RowType::kLessEqual, 1);
  p.SetObjective(Sense::kMaximize, {{x, 1}, {y, 1}});
  const auto r = lp::Solve(p);
  ASSERT_EQ(r.status, Status::kUnbounded);
  EXPECT_TRUE(lp::CheckCertificate(p, r));
  ASSERT_EQ(r.ray.size(), 2u);
  EXPECT_GT(r.ray[x] + r.ray[y], 0);
}

TEST(LpTest, FeasibilityProblem) {
  Problem p;
  const int x = p.AddVariable("x");
  p.AddRow("a", {{x, 2}}, RowType::kEqual, 1);
  const auto r = lp::Solve(p);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_EQ(r.primal[x], Rational(1, 2));
}

TEST(LpTest, TamperedCertificatesAreRejected) {
  Problem p;
  const int x = p.AddVariable("x"), y = p.AddVariable("y");
  p.AddRow("a", {{x, 1}, {y, 2}}, RowType::kLessEqual, 4);
  p.AddRow("b", {{x, 3}, {y, 1}}, RowType::kLessEqual, 6);
  p.SetObjective(Sense::kMaximize, {{x, 1}, {y, 1}});
  const auto r = lp::Solve(p);
  ASSERT_EQ(r.status, Status::kOptimal);
  ASSERT_TRUE(lp::CheckCertificate(p, r));
  auto bad = r;
  bad.objective += Rational(1, 1000);
  EXPECT_FALSE(lp::CheckCertificate(p, bad));
  bad = r;
  bad.primal[x] += Rational(1, 1000);
  EXPECT_FALSE(lp::CheckCertificate(p, bad));
  bad = r;
  bad.dual[0] = -bad.dual[0] - 1;
  EXPECT_FALSE(lp::CheckCertificate(p, bad));
  bad = r;
  bad.status = Status::kInfeasible;
  EXPECT_FALSE(lp::CheckCertificate(p, bad));
}

TEST(LpTest, MalformedProblem) {
  Problem p;
  p.AddVariable("x");
  p.AddRow("a", {{3, 1}}, RowType::kEqual, 1);
  EXPECT_THROW(p.Validate(), MalformedProblem);
  EXPECT_THROW(lp::Solve(p), MalformedProblem);
}

TEST(LpTest, Dump) {
  Problem p;
  const int x = p.AddVariable("x"), z = p.AddVariable("z", false);
  p.AddRow("cap", {{x, Rational(1, 2)}, {z, -1}}, RowType::kLessEqual, 3);
  p.SetObjective(Sense::kMinimize, {{x, 1}});
  const std::string d = p.Dump();
  EXPECT_NE(d.find("minimize"), std::string::npos);
  EXPECT_NE(d.find("cap:"), std::string::npos);
  EXPECT_NE(d.find("1/2"), std::string::npos);
  EXPECT_NE(d.find("<= 3"), std::string::npos);
  EXPECT_NE(d.find("x >= 0"), std::string::npos);
  EXPECT_NE(d.find("z free"), std::string::npos);
}

TEST(LpTest, ObserverSeesEverySolve) {
  int calls = 0;
  lp::SetSolveObserver([&](const Problem& p, const lp::Result& r) {
    ++calls;
    EXPECT_TRUE(lp::CheckCertificate(p, r));
  });
  Problem p;
  const int x = p.AddVariable("x");
  p.AddRow("a", {{x, 1}}, RowType::kLessEqual, 1);
  p.SetObjective(Sense::kMaximize, {{x, 1}});
  lp::Solve(p);
  lp::Solve(p, {.exact_only = true});
  lp::SetSolveObserver({});
  lp::Solve(p);
  EXPECT_EQ(calls, 2);
}

TEST(LpTest, DegenerateCycleProneProblem) {
  // Beale's example, which cycles under the textbook rule without safeguards.
  Problem p;
  std::vector<int> v;
  for (int j = 0; j < 4; ++j) v.push_back(p.AddVariable("x" + std::to_string(j)));
  p.AddRow("r1", {{v[0], Rational(1, 4)}, {v[1], -60}, {v[2], Rational(-1, 25)}, {v[3], 9}},
           RowType::kLessEqual, 0);
  p.AddRow("r2", {{v[0], Rational(1, 2)}, {v[1], -90}, {v[2], Rational(-1, 50)}, {v[3], 3}},
           RowType::kLessEqual, 0);
  p.AddRow("r3", {{v[2], 1}}, RowType::kLessEqual, 1);
  p.SetObjective(Sense::kMaximize,
                 {{v[0], Rational(3, 4)}, {v[1], -150}, {v[2], Rational(1, 50)}, {v[3], -6}});
  for (bool exact : {false, true}) {
    const auto r = lp::Solve(p, {.exact_only = exact});
    ASSERT_EQ(r.status, Status::kOptimal);
    EXPECT_EQ(r.objective, Rational(1, 20));
  }
}

TEST(LpTest, RandomProblemsMatchVertexEnumeration) {
  Rng rng(7);
  int optimal = 0, infeasible = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const int n = testing::Uniform(rng, 1, 3);
    const int m = testing::Uniform(rng, 1, 4);
    std::vector<DenseRow> rows;
    for (int i = 0; i < m; ++i) {
      DenseRow r{std::vector<Rational>(n), static_cast<RowType>(testing::Uniform(rng, 0, 2)),
                 testing::Uniform(rng, -4, 8)};
      for (auto& a : r.a) a = testing::Frac(testing::Uniform(rng, -3, 3), testing::Uniform(rng, 1, 3));
      rows.push_back(r);
    }
    // Keeps the feasible set bounded.
    DenseRow cap{std::vector<Rational>(n, 1), RowType::kLessEqual, testing::Uniform(rng, 1, 6)};
    rows.push_back(cap);
    std::vector<Rational> c(n);
    for (auto& v : c) v = testing::Uniform(rng, -5, 5);
    const bool minimize = testing::Uniform(rng, 0, 1);
    std::vector<Rational> c_max = c;
    if (minimize) {
      for (auto& v : c_max) v = -v;
    }
    const auto expected = BruteForceMax(rows, c_max);
    const Problem p = Build(rows, c, minimize ? Sense::kMinimize : Sense::kMaximize);
    for (bool exact : {false, true}) {
      const auto r = lp::Solve(p, {.exact_only = exact});
      EXPECT_TRUE(lp::CheckCertificate(p, r));
      if (!expected) {
        EXPECT_EQ(r.status, Status::kInfeasible);
        infeasible += !exact;
      } else {
        ASSERT_EQ(r.status, Status::kOptimal);
        EXPECT_EQ(r.objective, minimize ? Rational(-*expected) : *expected);
        optimal += !exact;
      }
    }
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 20);
}

}  // namespace
}  // namespace wirenl
