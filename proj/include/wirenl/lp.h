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

#ifndef WIRENL_LP_H_
#define WIRENL_LP_H_

#include <functional>
#include <string>
#include <vector>

#include "wirenl/rational.h"

namespace wirenl::lp {

enum class Sense { kMaximize, kMinimize, kFeasibility };
enum class RowType { kEqual, kLessEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string ToString(Status s);

struct Term {
  int var;
  Rational coef;
};

// Linear program with exact rational data. Variables are nonnegative or free.
class Problem {
 public:
  int AddVariable(std::string name, bool nonnegative = true);
  // Terms on the same variable are summed.
  int AddRow(std::string name, const std::vector<Term>& terms, RowType type,
             Rational rhs);
  void SetObjective(Sense sense, const std::vector<Term>& terms);

  int num_variables() const { return static_cast<int>(var_names_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::string& variable_name(int j) const { return var_names_[j]; }
  bool nonnegative(int j) const { return nonnegative_[j]; }
  const std::string& row_name(int i) const { return row_names_[i]; }
  const std::vector<Term>& row(int i) const { return rows_[i]; }
  RowType row_type(int i) const { return row_types_[i]; }
  const Rational& rhs(int i) const { return rhs_[i]; }
  Sense sense() const { return sense_; }
  // Dense objective, one coefficient per variable.
  const std::vector<Rational>& objective() const { return objective_; }

  // Throws MalformedProblem on out-of-range variables.
  void Validate() const;

  // Plain-text listing with exact coefficients:
  //   maximize|minimize|feasibility
  //   objective: <terms>
  //   <row name>: <terms> (=|<=|>=) <rhs>
  //   <variable> >= 0 | <variable> free
  std::string Dump() const;

 private:
  std::vector<std::string> var_names_;
  std::vector<bool> nonnegative_;
  std::vector<std::string> row_names_;
  std::vector<std::vector<Term>> rows_;
  std::vector<RowType> row_types_;
  std::vector<Rational> rhs_;
  std::vector<Rational> objective_;
  Sense sense_ = Sense::kFeasibility;
  bool bad_index_ = false;
};

struct Stats {
  int float_pivots = 0;
  int exact_pivots = 0;
  // True when the floating-point basis was certified without exact pivoting.
  bool float_basis_certified = false;
};

// Solution and evidence. For kOptimal, `dual` holds multipliers y with
//   maximize: A^T y >= c on nonnegative variables, = c on free ones,
//             y >= 0 on <= rows, y <= 0 on >= rows;
//   minimize: the same with every inequality reversed;
// and b^T y equal to the optimum. For kInfeasible, `dual` is a Farkas vector:
// A^T y >= 0 (= 0 on free variables), the maximize sign pattern on rows, and
// b^T y < 0. For kUnbounded, `primal` is feasible and `ray` is an improving
// recession direction.
struct Result {
  Status status = Status::kInfeasible;
  Rational objective;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> ray;
  Stats stats;
};

struct Options {
  // Skip the floating-point pass and run Bland's rule in exact arithmetic
  // from the all-artificial basis.
  bool exact_only = false;
};

// Two-phase simplex. A floating-point tableau pass proposes a final basis;
// its solution is rebuilt in exact arithmetic and certified. When the
// certificate does not hold the exact revised simplex (Bland's rule) takes
// over from that basis. Every returned result has passed CheckCertificate.
Result Solve(const Problem& problem, const Options& options = {});

// Re-verifies `result` against `problem` by exact substitution.
bool CheckCertificate(const Problem& problem, const Result& result);

// Called after every Solve with the problem and its result. Pass an empty
// function to clear. Intended for auditing.
using SolveObserver = std::function<void(const Problem&, const Result&)>;
void SetSolveObserver(SolveObserver observer);

}  // namespace wirenl::lp

#endif  // WIRENL_LP_H_
