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

#include "wirenl/lp.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "wirenl/errors.h"

namespace wirenl::lp {

std::string ToString(Status s) {
  switch (s) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "?";
}

int Problem::AddVariable(std::string name, bool nonnegative) {
  var_names_.push_back(std::move(name));
  nonnegative_.push_back(nonnegative);
  objective_.emplace_back(0);
  return num_variables() - 1;
}

int Problem::AddRow(std::string name, const std::vector<Term>& terms, RowType type,
                    Rational rhs) {
  std::map<int, Rational> merged;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) bad_index_ = true;
    merged[t.var] += t.coef;
  }
  std::vector<Term> row;
  row.reserve(merged.size());
  for (auto& [var, coef] : merged) {
    if (coef != 0) row.push_back({var, coef});
  }
  row_names_.push_back(std::move(name));
  rows_.push_back(std::move(row));
  row_types_.push_back(type);
  rhs_.push_back(std::move(rhs));
  return num_rows() - 1;
}

void Problem::SetObjective(Sense sense, const std::vector<Term>& terms) {
  sense_ = sense;
  for (auto& c : objective_) c = 0;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      bad_index_ = true;
      continue;
    }
    objective_[t.var] += t.coef;
  }
}

void Problem::Validate() const {
  if (bad_index_) throw MalformedProblem("term refers to an unknown variable");
  if (objective_.size() != var_names_.size()) {
    throw MalformedProblem("objective size mismatch");
  }
}

std::string Problem::Dump() const {
  std::ostringstream out;
  auto terms = [&](const std::vector<Term>& ts) {
    if (ts.empty()) return std::string("0");
    std::string s;
    for (const Term& t : ts) {
      if (!s.empty()) s += " + ";
      s += wirenl::ToString(t.coef) + " " + var_names_[t.var];
    }
    return s;
  };
  switch (sense_) {
    case Sense::kMaximize:
      out << "maximize\n";
      break;
    case Sense::kMinimize:
      out << "minimize\n";
      break;
    case Sense::kFeasibility:
      out << "feasibility\n";
      break;
  }
  std::vector<Term> obj;
  for (int j = 0; j < num_variables(); ++j) {
    if (objective_[j] != 0) obj.push_back({j, objective_[j]});
  }
  out << "objective: " << terms(obj) << "\n";
  for (int i = 0; i < num_rows(); ++i) {
    const char* rel = row_types_[i] == RowType::kEqual       ? "="
                      : row_types_[i] == RowType::kLessEqual ? "<="
                                                             : ">=";
    out << row_names_[i] << ": " << terms(rows_[i]) << " " << rel << " "
        << wirenl::ToString(rhs_[i]) << "\n";
  }
  for (int j = 0; j < num_variables(); ++j) {
    out << var_names_[j] << (nonnegative_[j] ? " >= 0" : " free") << "\n";
  }
  return out.str();
}

namespace {

using SparseCol = std::vector<std::pair<int, Rational>>;

// max c^T x, A x = b, x >= 0, b >= 0. Columns n..n+m-1 are artificials.
struct StdForm {
  int m = 0;
  int n = 0;
  std::vector<SparseCol> cols;
  std::vector<Rational> b;
  std::vector<Rational> c;
  std::vector<int> row_sign;
  std::vector<int> pos_col;
  std::vector<int> neg_col;
};

StdForm Standardize(const Problem& p) {
  StdForm sf;
  sf.m = p.num_rows();
  sf.row_sign.resize(sf.m);
  sf.b.resize(sf.m);
  for (int i = 0; i < sf.m; ++i) {
    sf.row_sign[i] = sgn(p.rhs(i)) < 0 ? -1 : 1;
    sf.b[i] = p.rhs(i) * sf.row_sign[i];
  }
  std::vector<SparseCol> by_var(p.num_variables());
  for (int i = 0; i < sf.m; ++i) {
    for (const Term& t : p.row(i)) by_var[t.var].push_back({i, t.coef * sf.row_sign[i]});
  }
  const int sense = p.sense() == Sense::kMaximize   ? 1
                    : p.sense() == Sense::kMinimize ? -1
                                                    : 0;
  sf.pos_col.assign(p.num_variables(), -1);
  sf.neg_col.assign(p.num_variables(), -1);
  for (int j = 0; j < p.num_variables(); ++j) {
    sf.pos_col[j] = static_cast<int>(sf.cols.size());
    sf.cols.push_back(by_var[j]);
    sf.c.push_back(p.objective()[j] * sense);
    if (!p.nonnegative(j)) {
      SparseCol neg = by_var[j];
      for (auto& e : neg) e.second = -e.second;
      sf.neg_col[j] = static_cast<int>(sf.cols.size());
      sf.cols.push_back(std::move(neg));
      sf.c.push_back(-p.objective()[j] * sense);
    }
  }
  for (int i = 0; i < sf.m; ++i) {
    if (p.row_type(i) == RowType::kEqual) continue;
    const int s = p.row_type(i) == RowType::kLessEqual ? 1 : -1;
    sf.cols.push_back({{i, Rational(s * sf.row_sign[i])}});
    sf.c.emplace_back(0);
  }
  sf.n = static_cast<int>(sf.cols.size());
  return sf;
}

// Column j of [A | I].
SparseCol Column(const StdForm& sf, int j) {
  if (j < sf.n) return sf.cols[j];
  return {{j - sf.n, Rational(1)}};
}

std::optional<Rational> Rationalize(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  if (std::fabs(v) < 1e-12) return Rational(0);
  const double tol = 1e-11 * std::max(1.0, std::fabs(v));
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = v;
  for (int k = 0; k < 60; ++k) {
    const double a = std::floor(x);
    if (std::fabs(a) > 1e15) return std::nullopt;
    const mpz_class ai(static_cast<long>(a));
    mpz_class p2 = ai * p1 + p0;
    mpz_class q2 = ai * q1 + q0;
    if (q2 > 1000000000000L) return std::nullopt;
    if (std::fabs(v - p2.get_d() / q2.get_d()) <= tol) {
      Rational q(p2, q2);
      q.canonicalize();
      return q;
    }
    const double frac = x - a;
    if (frac < 1e-15) return std::nullopt;
    x = 1.0 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

// Exact outcome in standard-form coordinates.
struct StdOutcome {
  Status status;
  std::vector<Rational> x;  // size n (artificials excluded)
  std::vector<Rational> y;  // size m
  std::vector<Rational> ray;
  int exact_pivots = 0;
};

Rational Dot(const SparseCol& col, const std::vector<Rational>& y) {
  Rational s = 0;
  for (const auto& [i, a] : col) s += a * y[i];
  return s;
}

// Exact checks in standard form.
bool PrimalFeasible(const StdForm& sf, const std::vector<Rational>& x) {
  std::vector<Rational> ax(sf.m);
  for (int j = 0; j < sf.n; ++j) {
    if (sgn(x[j]) < 0) return false;
    if (sgn(x[j]) == 0) continue;
    for (const auto& [i, a] : sf.cols[j]) ax[i] += a * x[j];
  }
  for (int i = 0; i < sf.m; ++i) {
    if (ax[i] != sf.b[i]) return false;
  }
  return true;
}

bool DualFeasible(const StdForm& sf, const std::vector<Rational>& y) {
  for (int j = 0; j < sf.n; ++j) {
    if (Dot(sf.cols[j], y) < sf.c[j]) return false;
  }
  return true;
}

Rational Objective(const StdForm& sf, const std::vector<Rational>& x) {
  Rational s = 0;
  for (int j = 0; j < sf.n; ++j) {
    if (sgn(sf.c[j]) != 0 && sgn(x[j]) != 0) s += sf.c[j] * x[j];
  }
  return s;
}

Rational BDot(const StdForm& sf, const std::vector<Rational>& y) {
  Rational s = 0;
  for (int i = 0; i < sf.m; ++i) s += sf.b[i] * y[i];
  return s;
}

bool FarkasValid(const StdForm& sf, const std::vector<Rational>& y) {
  for (int j = 0; j < sf.n; ++j) {
    if (sgn(Dot(sf.cols[j], y)) < 0) return false;
  }
  return sgn(BDot(sf, y)) < 0;
}

// Dense floating-point tableau simplex used to find a candidate basis.
class FloatTableau {
 public:
  enum class Outcome { kOptimal, kInfeasible, kUnbounded, kFailed };

  explicit FloatTableau(const StdForm& sf)
      : m_(sf.m), n_(sf.n), w_(sf.n + sf.m + 1), t_(static_cast<size_t>(m_) * w_, 0.0) {
    for (int j = 0; j < n_; ++j) {
      for (const auto& [i, a] : sf.cols[j]) at(i, j) = a.get_d();
    }
    for (int i = 0; i < m_; ++i) {
      at(i, n_ + i) = 1.0;
      at(i, w_ - 1) = sf.b[i].get_d();
      b_.push_back(sf.b[i].get_d());
      scale_ = std::max(scale_, std::fabs(sf.b[i].get_d()));
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
    c_.resize(n_);
    for (int j = 0; j < n_; ++j) c_[j] = sf.c[j].get_d();
  }

  Outcome Run() {
    // Phase 1: maximize minus the sum of artificials.
    d_.assign(w_, 0.0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[j] += at(i, j);
      d_[w_ - 1] += at(i, w_ - 1);
    }
    Outcome o = PerturbedIterate();
    if (o == Outcome::kFailed) return o;
    if (o == Outcome::kUnbounded) return Outcome::kFailed;
    if (!Restore()) return Outcome::kInfeasible;
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += at(i, w_ - 1);
    }
    if (infeasibility > 1e-9 * std::max(1.0, scale_)) return Outcome::kInfeasible;
    DriveOutArtificials();
    // Phase 2.
    for (int j = 0; j < w_; ++j) {
      double v = j < n_ ? c_[j] : 0.0;
      for (int i = 0; i < m_; ++i) {
        const int bj = basis_[i];
        const double cb = bj < n_ ? c_[bj] : 0.0;
        if (cb != 0.0) v -= cb * at(i, j);
      }
      d_[j] = v;
    }
    o = PerturbedIterate();
    if (o != Outcome::kOptimal) return o;
    return Restore() ? Outcome::kOptimal : Outcome::kFailed;
  }

  const std::vector<int>& basis() const { return basis_; }
  int pivots() const { return pivots_; }
  int unbounded_column() const { return unbounded_column_; }

 private:
  double& at(int i, int j) { return t_[static_cast<size_t>(i) * w_ + j]; }

  Outcome Iterate() {
    constexpr double kOptTol = 1e-9;
    constexpr double kPivTol = 1e-9;
    int degenerate = 0;
    bool bland = false;
    while (true) {
      if (pivots_ > 50000) return Outcome::kFailed;
      int q = -1;
      double best = kOptTol;
      for (int j = 0; j < n_; ++j) {
        if (d_[j] > best) {
          q = j;
          if (bland) break;
          best = d_[j];
        }
      }
      if (q < 0) return Outcome::kOptimal;
      int r = -1;
      double ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, q);
        if (a <= kPivTol) continue;
        const double rhs = std::max(0.0, at(i, w_ - 1));
        const double v = rhs / a;
        if (r < 0 || v < ratio - 1e-12) {
          r = i;
          ratio = v;
        } else if (v <= ratio + 1e-12) {
          if (bland ? basis_[i] < basis_[r] : a > at(r, q)) {
            r = i;
            ratio = std::min(ratio, v);
          }
        }
      }
      if (r < 0) {
        unbounded_column_ = q;
        return Outcome::kUnbounded;
      }
      if (ratio <= 1e-12) {
        if (++degenerate > 50) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      Pivot(r, q);
    }
  }

  // Primal simplex on basic values shifted by small positive amounts, which
  // breaks the heavy degeneracy of decomposition LPs.
  Outcome PerturbedIterate() {
    for (int i = 0; i < m_; ++i) {
      at(i, w_ - 1) += 1e-7 * std::max(1.0, scale_) * (1.0 + rng_() % 1000 / 1000.0);
    }
    return Iterate();
  }

  // Recomputes basic values for the true right-hand side from the B^-1
  // columns, then removes negative values with dual simplex pivots. False if
  // the current phase turns out primal infeasible.
  bool Restore() {
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) {
        const double a = at(i, n_ + k);
        if (a != 0.0) v += a * b_[k];
      }
      at(i, w_ - 1) = std::fabs(v) < 1e-13 ? 0.0 : v;
    }
    for (int iter = 0; iter < 10 * (m_ + 1); ++iter) {
      int r = -1;
      double worst = -1e-11 * std::max(1.0, scale_);
      for (int i = 0; i < m_; ++i) {
        if (at(i, w_ - 1) < worst) {
          worst = at(i, w_ - 1);
          r = i;
        }
      }
      if (r < 0) {
        for (int i = 0; i < m_; ++i) at(i, w_ - 1) = std::max(0.0, at(i, w_ - 1));
        return true;
      }
      int q = -1;
      double ratio = 0.0;
      for (int j = 0; j < n_; ++j) {
        const double a = at(r, j);
        if (a >= -1e-9) continue;
        const double v = std::min(0.0, d_[j]) / a;
        if (q < 0 || v < ratio) {
          q = j;
          ratio = v;
        }
      }
      if (q < 0) return false;
      Pivot(r, q);
    }
    return false;
  }

  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int q = -1;
      double best = 1e-7;
      for (int j = 0; j < n_; ++j) {
        if (std::fabs(at(i, j)) > best) {
          best = std::fabs(at(i, j));
          q = j;
        }
      }
      if (q >= 0) Pivot(i, q);
    }
  }

  void Pivot(int r, int q) {
    ++pivots_;
    double* row = &t_[static_cast<size_t>(r) * w_];
    const double inv = 1.0 / row[q];
    for (int j = 0; j < w_; ++j) row[j] *= inv;
    row[q] = 1.0;
    std::vector<int> nz;
    nz.reserve(w_);
    for (int j = 0; j < w_; ++j) {
      if (row[j] != 0.0) nz.push_back(j);
    }
    auto eliminate = [&](double* target) {
      const double f = target[q];
      if (f == 0.0) return;
      for (int j : nz) {
        double v = target[j] - f * row[j];
        target[j] = std::fabs(v) < 1e-13 ? 0.0 : v;
      }
      target[q] = 0.0;
    };
    for (int i = 0; i < m_; ++i) {
      if (i != r) eliminate(&t_[static_cast<size_t>(i) * w_]);
    }
    eliminate(d_.data());
    basis_[r] = q;
  }

  int m_;
  int n_;
  int w_;
  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<double> c_;
  std::vector<int> basis_;
  std::vector<double> b_;
  std::minstd_rand rng_;
  double scale_ = 1.0;
  int pivots_ = 0;
  int unbounded_column_ = -1;
};

// Solves B z = rhs (or B^T z = rhs) in double precision with two rounds of
// iterative refinement.
std::vector<double> SolveDense(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                               const Eigen::MatrixXd& mat, const std::vector<double>& rhs,
                               bool transpose) {
  const int m = static_cast<int>(rhs.size());
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = rhs[i];
  auto solve = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (!transpose) return lu.solve(v);
    // B^T z = v  <=>  z = P^T L^-T U^-T v with PA = LU.
    Eigen::VectorXd u = lu.matrixLU().triangularView<Eigen::Upper>().transpose().solve(v);
    u = lu.matrixLU().triangularView<Eigen::UnitLower>().transpose().solve(u);
    return lu.permutationP().transpose() * u;
  };
  Eigen::VectorXd z = solve(b);
  for (int round = 0; round < 2; ++round) {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      long double acc = b[i];
      for (int k = 0; k < m; ++k) {
        const double a = transpose ? mat(k, i) : mat(i, k);
        if (a != 0.0) acc -= static_cast<long double>(a) * z[k];
      }
      r[i] = static_cast<double>(acc);
    }
    z += solve(r);
  }
  return std::vector<double>(z.data(), z.data() + m);
}

// Exact revised simplex with an explicit dense basis inverse and Bland's rule.
class ExactSimplex {
 public:
  explicit ExactSimplex(const StdForm& sf) : sf_(sf), m_(sf.m), n_(sf.n) {}

  // Installs `basis`; false if singular or not primal feasible.
  bool Init(const std::vector<int>& basis) {
    basis_ = basis;
    std::vector<std::vector<Rational>> mat(m_, std::vector<Rational>(2 * m_));
    for (int k = 0; k < m_; ++k) {
      for (const auto& [i, a] : Column(sf_, basis_[k])) mat[i][k] = a;
    }
    for (int i = 0; i < m_; ++i) mat[i][m_ + i] = 1;
    // Gauss-Jordan on [B | I].
    for (int col = 0; col < m_; ++col) {
      int piv = -1;
      for (int i = col; i < m_; ++i) {
        if (sgn(mat[i][col]) != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) return false;
      std::swap(mat[piv], mat[col]);
      const Rational inv = 1 / mat[col][col];
      for (int j = 0; j < 2 * m_; ++j) {
        if (sgn(mat[col][j]) != 0) mat[col][j] *= inv;
      }
      for (int i = 0; i < m_; ++i) {
        if (i == col || sgn(mat[i][col]) == 0) continue;
        const Rational f = mat[i][col];
        for (int j = 0; j < 2 * m_; ++j) {
          if (sgn(mat[col][j]) != 0) mat[i][j] -= f * mat[col][j];
        }
      }
    }
    binv_.assign(m_, std::vector<Rational>(m_));
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < m_; ++k) binv_[i][k] = mat[i][m_ + k];
    }
    xb_.assign(m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < m_; ++k) {
        if (sgn(binv_[i][k]) != 0 && sgn(sf_.b[k]) != 0) xb_[i] += binv_[i][k] * sf_.b[k];
      }
      if (sgn(xb_[i]) < 0) return false;
    }
    return true;
  }

  void InitArtificial() {
    basis_.resize(m_);
    binv_.assign(m_, std::vector<Rational>(m_));
    xb_ = sf_.b;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      binv_[i][i] = 1;
    }
  }

  StdOutcome Solve() {
    StdOutcome out;
    std::vector<Rational> c1(n_ + m_);
    bool need_phase1 = false;
    for (int i = 0; i < m_; ++i) {
      c1[n_ + i] = -1;
      if (basis_[i] >= n_ && sgn(xb_[i]) > 0) need_phase1 = true;
    }
    if (need_phase1) {
      int entering = -1;
      Run(c1, &entering);
      Rational infeas = 0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= n_) infeas += xb_[i];
      }
      if (sgn(infeas) > 0) {
        out.status = Status::kInfeasible;
        out.y = Duals(c1);
        out.exact_pivots = pivots_;
        return out;
      }
    }
    DriveOut();
    std::vector<Rational> c2(n_ + m_);
    for (int j = 0; j < n_; ++j) c2[j] = sf_.c[j];
    int entering = -1;
    const bool bounded = Run(c2, &entering);
    out.x = Primal();
    out.exact_pivots = pivots_;
    if (!bounded) {
      out.status = Status::kUnbounded;
      out.ray.assign(n_, Rational(0));
      out.ray[entering] = 1;
      const std::vector<Rational> alpha = Ftran(entering);
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < n_) out.ray[basis_[i]] = -alpha[i];
      }
      return out;
    }
    out.status = Status::kOptimal;
    out.y = Duals(c2);
    return out;
  }

 private:
  std::vector<Rational> Duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_);
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (int k = 0; k < m_; ++k) {
        if (sgn(binv_[i][k]) != 0) y[k] += cb * binv_[i][k];
      }
    }
    return y;
  }

  std::vector<Rational> Ftran(int j) const {
    std::vector<Rational> alpha(m_);
    const SparseCol col = Column(sf_, j);
    for (int i = 0; i < m_; ++i) {
      for (const auto& [r, a] : col) {
        if (sgn(binv_[i][r]) != 0) alpha[i] += binv_[i][r] * a;
      }
    }
    return alpha;
  }

  std::vector<Rational> Primal() const {
    std::vector<Rational> x(n_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = xb_[i];
    }
    return x;
  }

  void Pivot(int r, int q, const std::vector<Rational>& alpha) {
    ++pivots_;
    const Rational inv = 1 / alpha[r];
    for (int k = 0; k < m_; ++k) {
      if (sgn(binv_[r][k]) != 0) binv_[r][k] *= inv;
    }
    xb_[r] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || sgn(alpha[i]) == 0) continue;
      for (int k = 0; k < m_; ++k) {
        if (sgn(binv_[r][k]) != 0) binv_[i][k] -= alpha[i] * binv_[r][k];
      }
      xb_[i] -= alpha[i] * xb_[r];
    }
    basis_[r] = q;
  }

  // Bland's rule over structural columns. Returns false when unbounded, with
  // the entering column in *entering.
  bool Run(const std::vector<Rational>& cost, int* entering) {
    std::vector<bool> in_basis(n_ + m_, false);
    for (int b : basis_) in_basis[b] = true;
    while (true) {
      const std::vector<Rational> y = Duals(cost);
      int q = -1;
      for (int j = 0; j < n_; ++j) {
        if (in_basis[j]) continue;
        if (cost[j] - Dot(sf_.cols[j], y) > 0) {
          q = j;
          break;
        }
      }
      if (q < 0) return true;
      const std::vector<Rational> alpha = Ftran(q);
      int r = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (sgn(alpha[i]) <= 0) continue;
        Rational ratio = xb_[i] / alpha[i];
        if (r < 0 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r < 0) {
        *entering = q;
        return false;
      }
      in_basis[basis_[r]] = false;
      in_basis[q] = true;
      Pivot(r, q, alpha);
    }
  }

  void DriveOut() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::vector<bool> in_basis(n_, false);
      for (int b : basis_) {
        if (b < n_) in_basis[b] = true;
      }
      for (int j = 0; j < n_; ++j) {
        if (in_basis[j]) continue;
        Rational row_entry = 0;
        for (const auto& [r, a] : sf_.cols[j]) row_entry += binv_[i][r] * a;
        if (sgn(row_entry) != 0) {
          Pivot(i, j, Ftran(j));
          break;
        }
      }
    }
  }

  const StdForm& sf_;
  int m_;
  int n_;
  std::vector<int> basis_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
  int pivots_ = 0;
};

// Rebuilds the float basis exactly; nullopt if any check fails.
std::optional<StdOutcome> CertifyFloatBasis(const StdForm& sf, const std::vector<int>& basis,
                                            FloatTableau::Outcome outcome,
                                            int unbounded_column) {
  const int m = sf.m;
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    for (const auto& [i, a] : Column(sf, basis[k])) mat(i, k) = a.get_d();
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(mat);
  if (m > 0 && std::fabs(lu.determinant()) < 1e-300) return std::nullopt;

  auto rationalize = [](const std::vector<double>& v) -> std::optional<std::vector<Rational>> {
    std::vector<Rational> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      auto q = Rationalize(v[i]);
      if (!q) return std::nullopt;
      out[i] = *q;
    }
    return out;
  };

  StdOutcome out;
  if (outcome == FloatTableau::Outcome::kInfeasible) {
    std::vector<double> cb(m);
    for (int k = 0; k < m; ++k) cb[k] = basis[k] >= sf.n ? -1.0 : 0.0;
    auto y = rationalize(SolveDense(lu, mat, cb, true));
    if (!y || !FarkasValid(sf, *y)) return std::nullopt;
    out.status = Status::kInfeasible;
    out.y = std::move(*y);
    return out;
  }

  std::vector<double> b(m);
  for (int i = 0; i < m; ++i) b[i] = sf.b[i].get_d();
  auto xb = rationalize(SolveDense(lu, mat, b, false));
  if (!xb) return std::nullopt;
  out.x.assign(sf.n, Rational(0));
  for (int k = 0; k < m; ++k) {
    if (basis[k] < sf.n) {
      out.x[basis[k]] = (*xb)[k];
    } else if (sgn((*xb)[k]) != 0) {
      return std::nullopt;
    }
  }
  if (!PrimalFeasible(sf, out.x)) return std::nullopt;

  if (outcome == FloatTableau::Outcome::kUnbounded) {
    std::vector<double> col(m, 0.0);
    for (const auto& [i, a] : sf.cols[unbounded_column]) col[i] = a.get_d();
    auto alpha = rationalize(SolveDense(lu, mat, col, false));
    if (!alpha) return std::nullopt;
    out.ray.assign(sf.n, Rational(0));
    out.ray[unbounded_column] = 1;
    for (int k = 0; k < m; ++k) {
      if (basis[k] < sf.n) {
        out.ray[basis[k]] = -(*alpha)[k];
      } else if (sgn((*alpha)[k]) != 0) {
        return std::nullopt;
      }
    }
    // Recession direction: A d = 0, d >= 0, c^T d > 0.
    std::vector<Rational> ad(m);
    for (int j = 0; j < sf.n; ++j) {
      if (sgn(out.ray[j]) < 0) return std::nullopt;
      for (const auto& [i, a] : sf.cols[j]) ad[i] += a * out.ray[j];
    }
    for (const auto& v : ad) {
      if (sgn(v) != 0) return std::nullopt;
    }
    if (sgn(Objective(sf, out.ray)) <= 0) return std::nullopt;
    out.status = Status::kUnbounded;
    return out;
  }

  std::vector<double> cb(m);
  for (int k = 0; k < m; ++k) cb[k] = basis[k] < sf.n ? sf.c[basis[k]].get_d() : 0.0;
  auto y = rationalize(SolveDense(lu, mat, cb, true));
  if (!y || !DualFeasible(sf, *y)) return std::nullopt;
  if (Objective(sf, out.x) != BDot(sf, *y)) return std::nullopt;
  out.status = Status::kOptimal;
  out.y = std::move(*y);
  return out;
}

std::mutex& ObserverMutex() {
  static std::mutex mu;
  return mu;
}

SolveObserver& Observer() {
  static SolveObserver observer;
  return observer;
}

// Maps a standard-form outcome back to the caller's variables and rows.
Result ToResult(const Problem& p, const StdForm& sf, const StdOutcome& o) {
  Result r;
  r.status = o.status;
  auto original = [&](const std::vector<Rational>& v) {
    std::vector<Rational> out(p.num_variables());
    for (int j = 0; j < p.num_variables(); ++j) {
      out[j] = v[sf.pos_col[j]];
      if (sf.neg_col[j] >= 0) out[j] -= v[sf.neg_col[j]];
    }
    return out;
  };
  if (o.status != Status::kInfeasible) r.primal = original(o.x);
  if (o.status == Status::kUnbounded) r.ray = original(o.ray);
  if (o.status != Status::kUnbounded) {
    r.dual.resize(p.num_rows());
    const bool negate = o.status == Status::kOptimal && p.sense() == Sense::kMinimize;
    for (int i = 0; i < p.num_rows(); ++i) {
      r.dual[i] = o.y[i] * sf.row_sign[i];
      if (negate) r.dual[i] = -r.dual[i];
    }
  }
  if (o.status == Status::kOptimal) {
    r.objective = 0;
    for (int j = 0; j < p.num_variables(); ++j) {
      if (sgn(p.objective()[j]) != 0) r.objective += p.objective()[j] * r.primal[j];
    }
  }
  r.stats.exact_pivots = o.exact_pivots;
  return r;
}

}  // namespace

void SetSolveObserver(SolveObserver observer) {
  std::lock_guard<std::mutex> lock(ObserverMutex());
  Observer() = std::move(observer);
}

Result Solve(const Problem& problem, const Options& options) {
  problem.Validate();
  const StdForm sf = Standardize(problem);
  std::optional<StdOutcome> outcome;
  int float_pivots = 0;
  std::vector<int> warm;
  if (!options.exact_only) {
    FloatTableau tableau(sf);
    const FloatTableau::Outcome o = tableau.Run();
    float_pivots = tableau.pivots();
    if (o != FloatTableau::Outcome::kFailed) {
      warm = tableau.basis();
      outcome = CertifyFloatBasis(sf, warm, o, tableau.unbounded_column());
    }
  }
  const bool certified = outcome.has_value();
  if (!outcome) {
    ExactSimplex exact(sf);
    if (warm.empty() || !exact.Init(warm)) exact.InitArtificial();
    outcome = exact.Solve();
  }
  Result result = ToResult(problem, sf, *outcome);
  result.stats.float_pivots = float_pivots;
  result.stats.float_basis_certified = certified;
  if (!CheckCertificate(problem, result)) {
    throw std::logic_error("LP certificate failed re-verification");
  }
  SolveObserver observer;
  {
    std::lock_guard<std::mutex> lock(ObserverMutex());
    observer = Observer();
  }
  if (observer) observer(problem, result);
  return result;
}

bool CheckCertificate(const Problem& p, const Result& r) {
  const int n = p.num_variables();
  const int m = p.num_rows();
  auto row_value = [&](int i, const std::vector<Rational>& x) {
    Rational s = 0;
    for (const Term& t : p.row(i)) s += t.coef * x[t.var];
    return s;
  };
  auto primal_ok = [&](const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != n) return false;
    for (int j = 0; j < n; ++j) {
      if (p.nonnegative(j) && sgn(x[j]) < 0) return false;
    }
    for (int i = 0; i < m; ++i) {
      const int cmp = ::cmp(row_value(i, x), p.rhs(i));
      if (p.row_type(i) == RowType::kEqual && cmp != 0) return false;
      if (p.row_type(i) == RowType::kLessEqual && cmp > 0) return false;
      if (p.row_type(i) == RowType::kGreaterEqual && cmp < 0) return false;
    }
    return true;
  };
  auto aty = [&](const std::vector<Rational>& y) {
    std::vector<Rational> v(n);
    for (int i = 0; i < m; ++i) {
      if (sgn(y[i]) == 0) continue;
      for (const Term& t : p.row(i)) v[t.var] += t.coef * y[i];
    }
    return v;
  };
  auto bty = [&](const std::vector<Rational>& y) {
    Rational s = 0;
    for (int i = 0; i < m; ++i) s += p.rhs(i) * y[i];
    return s;
  };
  // Sign pattern of row multipliers; dir = +1 for the maximize convention.
  auto row_signs_ok = [&](const std::vector<Rational>& y, int dir) {
    for (int i = 0; i < m; ++i) {
      const int s = sgn(y[i]) * dir;
      if (p.row_type(i) == RowType::kLessEqual && s < 0) return false;
      if (p.row_type(i) == RowType::kGreaterEqual && s > 0) return false;
    }
    return true;
  };

  switch (r.status) {
    case Status::kOptimal: {
      if (!primal_ok(r.primal)) return false;
      Rational value = 0;
      for (int j = 0; j < n; ++j) value += p.objective()[j] * r.primal[j];
      if (value != r.objective) return false;
      if (p.sense() == Sense::kFeasibility) return true;
      if (static_cast<int>(r.dual.size()) != m) return false;
      const int dir = p.sense() == Sense::kMaximize ? 1 : -1;
      if (!row_signs_ok(r.dual, dir)) return false;
      const std::vector<Rational> v = aty(r.dual);
      for (int j = 0; j < n; ++j) {
        const int s = sgn(v[j] - p.objective()[j]) * dir;
        if (p.nonnegative(j) ? s < 0 : s != 0) return false;
      }
      return bty(r.dual) == r.objective;
    }
    case Status::kInfeasible: {
      if (static_cast<int>(r.dual.size()) != m) return false;
      if (!row_signs_ok(r.dual, 1)) return false;
      const std::vector<Rational> v = aty(r.dual);
      for (int j = 0; j < n; ++j) {
        if (p.nonnegative(j) ? sgn(v[j]) < 0 : sgn(v[j]) != 0) return false;
      }
      return sgn(bty(r.dual)) < 0;
    }
    case Status::kUnbounded: {
      if (p.sense() == Sense::kFeasibility) return false;
      if (!primal_ok(r.primal) || static_cast<int>(r.ray.size()) != n) return false;
      for (int j = 0; j < n; ++j) {
        if (p.nonnegative(j) && sgn(r.ray[j]) < 0) return false;
      }
      for (int i = 0; i < m; ++i) {
        const int s = sgn(row_value(i, r.ray));
        if (p.row_type(i) == RowType::kEqual && s != 0) return false;
        if (p.row_type(i) == RowType::kLessEqual && s > 0) return false;
        if (p.row_type(i) == RowType::kGreaterEqual && s < 0) return false;
      }
      Rational gain = 0;
      for (int j = 0; j < n; ++j) gain += p.objective()[j] * r.ray[j];
      return p.sense() == Sense::kMaximize ? sgn(gain) > 0 : sgn(gain) < 0;
    }
  }
  return false;
}

}  // namespace wirenl::lp
