// Copyright 2026 The MPSS Authors
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

#include "mpss/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include <Eigen/Dense>

#include "mpss/error.h"

namespace mpss {

std::string_view RelationToken(Relation relation) {
  switch (relation) {
    case Relation::kLessEqual: return "<=";
    case Relation::kGreaterEqual: return ">=";
    case Relation::kEqual: return "=";
  }
  return "?";
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
  }
  return "?";
}

std::size_t LinearProgram::AddVariable(std::string name, double objective,
                                       double lower, double upper) {
  objective_.push_back(objective);
  lower_.push_back(lower);
  upper_.push_back(upper);
  names_.push_back(std::move(name));
  for (Constraint& row : constraints_) row.coefficients.push_back(0.0);
  return objective_.size() - 1;
}

std::size_t LinearProgram::AddConstraint(std::vector<double> coefficients,
                                         Relation relation, double rhs) {
  if (coefficients.size() != num_variables()) {
    throw Error(ErrorCode::kInvalidProgram,
                "constraint has " + std::to_string(coefficients.size()) +
                    " coefficients, program has " +
                    std::to_string(num_variables()) + " variables");
  }
  constraints_.push_back({std::move(coefficients), relation, rhs});
  return constraints_.size() - 1;
}

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
}

void LinearProgram::Validate() const {
  const std::size_t n = num_variables();
  if (lower_.size() != n || upper_.size() != n || names_.size() != n) {
    throw Error(ErrorCode::kInvalidProgram, "bound/name arrays out of sync");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective_[j])) {
      throw Error(ErrorCode::kInvalidProgram,
                  "non-finite objective coefficient for " + names_[j]);
    }
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) ||
        lower_[j] == kInfinity || upper_[j] == -kInfinity ||
        lower_[j] > upper_[j]) {
      throw Error(ErrorCode::kInvalidProgram, "bad bounds for " + names_[j]);
    }
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const Constraint& row = constraints_[i];
    if (row.coefficients.size() != n) {
      throw Error(ErrorCode::kInvalidProgram,
                  "constraint " + std::to_string(i) + " has wrong length");
    }
    if (!std::isfinite(row.rhs) ||
        !std::all_of(row.coefficients.begin(), row.coefficients.end(),
                     [](double v) { return std::isfinite(v); })) {
      throw Error(ErrorCode::kInvalidProgram,
                  "non-finite data in constraint " + std::to_string(i));
    }
  }
}

void Tolerances::Validate() const {
  if (!(feasibility > 0) || !(pivot > 0) || !(gap > 0) ||
      iteration_limit < 1 || degenerate_pivot_limit < 1) {
    throw Error(ErrorCode::kInvalidProgram,
                "tolerances must be positive and caps at least 1");
  }
}

namespace {

// How an original variable is expressed in nonnegative standard-form columns:
// x = offset + sign * x'[pos] - x'[neg]  (neg < 0 when absent).
struct ColumnMap {
  int pos = -1;
  int neg = -1;
  double offset = 0.0;
  double sign = 1.0;
};

enum class RowKind { kSlack, kSurplus, kEquality };

class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& lp, const Tolerances& tol)
      : lp_(lp), tol_(tol) {
    BuildStandardForm();
  }

  LpSolution Run() {
    LpSolution sol;
    if (num_artificial_ > 0) {
      Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(num_cols_);
      for (int k = first_artificial_; k < num_cols_; ++k) phase1_cost[k] = -1.0;
      RunPhase(phase1_cost);
      double infeasibility = 0.0;
      for (int i = 0; i < num_rows_; ++i) {
        if (IsArtificial(basis_[i])) infeasibility += std::max(0.0, Rhs(i));
      }
      if (infeasibility > tol_.feasibility) {
        sol.status = LpStatus::kInfeasible;
        sol.iterations = iterations_;
        sol.switched_to_bland = used_bland_;
        return sol;
      }
      DriveOutArtificials();
    }
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(num_cols_);
    cost.head(num_structural_) = structural_cost_;
    if (!RunPhase(cost)) {
      sol.status = LpStatus::kUnbounded;
      sol.iterations = iterations_;
      sol.switched_to_bland = used_bland_;
      return sol;
    }
    Extract(cost, sol);
    return sol;
  }

 private:
  bool IsArtificial(int col) const { return col >= first_artificial_; }
  double Rhs(int row) const { return tableau_(row, num_cols_); }

  void BuildStandardForm() {
    const std::size_t n = lp_.num_variables();
    const auto& lower = lp_.lower_bounds();
    const auto& upper = lp_.upper_bounds();
    maps_.resize(n);
    struct BoundRow {
      int col;
      double width;
    };
    std::vector<BoundRow> bound_rows;
    int next = 0;
    for (std::size_t j = 0; j < n; ++j) {
      ColumnMap& m = maps_[j];
      if (std::isfinite(lower[j])) {
        m.pos = next++;
        m.offset = lower[j];
        if (std::isfinite(upper[j])) {
          bound_rows.push_back({m.pos, upper[j] - lower[j]});
        }
      } else if (std::isfinite(upper[j])) {
        m.pos = next++;
        m.offset = upper[j];
        m.sign = -1.0;
      } else {
        m.pos = next++;
        m.neg = next++;
      }
    }
    num_structural_ = next;
    structural_cost_ = Eigen::VectorXd::Zero(num_structural_);
    for (std::size_t j = 0; j < n; ++j) {
      const double c = lp_.objective()[j];
      structural_cost_[maps_[j].pos] += maps_[j].sign * c;
      if (maps_[j].neg >= 0) structural_cost_[maps_[j].neg] -= c;
    }

    num_original_rows_ = static_cast<int>(lp_.num_constraints());
    num_rows_ = num_original_rows_ + static_cast<int>(bound_rows.size());
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(num_rows_, num_structural_);
    Eigen::VectorXd rhs(num_rows_);
    std::vector<Relation> relation(num_rows_);
    for (int i = 0; i < num_original_rows_; ++i) {
      const Constraint& c = lp_.constraints()[i];
      double b = c.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = c.coefficients[j];
        if (a == 0.0) continue;
        rows(i, maps_[j].pos) += maps_[j].sign * a;
        if (maps_[j].neg >= 0) rows(i, maps_[j].neg) -= a;
        b -= a * maps_[j].offset;
      }
      rhs[i] = b;
      relation[i] = c.relation;
    }
    for (std::size_t k = 0; k < bound_rows.size(); ++k) {
      const int i = num_original_rows_ + static_cast<int>(k);
      rows(i, bound_rows[k].col) = 1.0;
      rhs[i] = bound_rows[k].width;
      relation[i] = Relation::kLessEqual;
    }

    // Row scaling by the largest magnitude, then sign normalization so every
    // right-hand side is nonnegative.
    row_factor_.resize(num_rows_);
    std::vector<RowKind> kind(num_rows_);
    int num_slack = 0;
    num_artificial_ = 0;
    for (int i = 0; i < num_rows_; ++i) {
      double scale = rows.row(i).cwiseAbs().maxCoeff();
      if (num_structural_ == 0 || scale == 0.0) scale = 1.0;
      double factor = 1.0 / scale;
      Relation rel = relation[i];
      if (rhs[i] * factor < 0.0) {
        factor = -factor;
        if (rel == Relation::kLessEqual) {
          rel = Relation::kGreaterEqual;
        } else if (rel == Relation::kGreaterEqual) {
          rel = Relation::kLessEqual;
        }
      }
      rows.row(i) *= factor;
      rhs[i] *= factor;
      row_factor_[i] = factor;
      switch (rel) {
        case Relation::kLessEqual:
          kind[i] = RowKind::kSlack;
          ++num_slack;
          break;
        case Relation::kGreaterEqual:
          kind[i] = RowKind::kSurplus;
          ++num_slack;
          ++num_artificial_;
          break;
        case Relation::kEqual:
          kind[i] = RowKind::kEquality;
          ++num_artificial_;
          break;
      }
    }

    first_artificial_ = num_structural_ + num_slack;
    num_cols_ = first_artificial_ + num_artificial_;
    tableau_ = Eigen::MatrixXd::Zero(num_rows_, num_cols_ + 1);
    tableau_.leftCols(num_structural_) = rows;
    tableau_.col(num_cols_) = rhs;
    basis_.assign(num_rows_, -1);
    identity_col_.assign(num_rows_, -1);
    int slack = num_structural_;
    int artificial = first_artificial_;
    for (int i = 0; i < num_rows_; ++i) {
      switch (kind[i]) {
        case RowKind::kSlack:
          tableau_(i, slack) = 1.0;
          basis_[i] = identity_col_[i] = slack++;
          break;
        case RowKind::kSurplus:
          tableau_(i, slack++) = -1.0;
          tableau_(i, artificial) = 1.0;
          basis_[i] = identity_col_[i] = artificial++;
          break;
        case RowKind::kEquality:
          tableau_(i, artificial) = 1.0;
          basis_[i] = identity_col_[i] = artificial++;
          break;
      }
    }
    is_basic_.assign(num_cols_, false);
    for (int b : basis_) is_basic_[b] = true;
  }

  Eigen::VectorXd ReducedCosts(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd cb(num_rows_);
    for (int i = 0; i < num_rows_; ++i) cb[i] = cost[basis_[i]];
    return cost - tableau_.leftCols(num_cols_).transpose() * cb;
  }

  int ChooseEntering(const Eigen::VectorXd& reduced, bool bland) const {
    int best = -1;
    double best_value = tol_.pivot;
    for (int k = 0; k < first_artificial_; ++k) {
      if (is_basic_[k] || reduced[k] <= tol_.pivot) continue;
      if (bland) return k;
      // Near-equal candidates count as ties so that rounding noise does not
      // decide the entering column; the lowest index wins.
      if (reduced[k] > best_value + 1e-11 * std::max(1.0, best_value)) {
        best_value = reduced[k];
        best = k;
      }
    }
    return best;
  }

  // Minimum ratio; ties go to the lowest basic variable index.
  int ChooseLeaving(int entering) const {
    int best = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < num_rows_; ++i) {
      const double a = tableau_(i, entering);
      if (a <= tol_.pivot) continue;
      const double ratio = std::max(0.0, Rhs(i)) / a;
      if (best < 0) {
        best = i;
        best_ratio = ratio;
        continue;
      }
      const double tie = 1e-12 * std::max(1.0, best_ratio);
      if (ratio < best_ratio - tie ||
          (ratio <= best_ratio + tie && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void Pivot(int row, int col) {
    tableau_.row(row) /= tableau_(row, col);
    tableau_(row, col) = 1.0;
    for (int i = 0; i < num_rows_; ++i) {
      if (i == row) continue;
      const double factor = tableau_(i, col);
      if (factor == 0.0) continue;
      tableau_.row(i) -= factor * tableau_.row(row);
      tableau_(i, col) = 0.0;
    }
    is_basic_[basis_[row]] = false;
    basis_[row] = col;
    is_basic_[col] = true;
  }

  // Returns false when an improving ray is found.
  bool RunPhase(const Eigen::VectorXd& cost) {
    bool bland = false;
    std::size_t degenerate_run = 0;
    while (true) {
      const Eigen::VectorXd reduced = ReducedCosts(cost);
      const int entering = ChooseEntering(reduced, bland);
      if (entering < 0) return true;
      const int leaving = ChooseLeaving(entering);
      if (leaving < 0) return false;
      if (iterations_ >= tol_.iteration_limit) {
        throw Error(ErrorCode::kIterationLimit,
                    "simplex exceeded " +
                        std::to_string(tol_.iteration_limit) + " pivots");
      }
      if (Rhs(leaving) <= tol_.pivot) {
        if (++degenerate_run >= tol_.degenerate_pivot_limit && !bland) {
          bland = true;
          used_bland_ = true;
        }
      } else {
        degenerate_run = 0;
      }
      Pivot(leaving, entering);
      ++iterations_;
    }
  }

  void DriveOutArtificials() {
    for (int i = 0; i < num_rows_; ++i) {
      if (!IsArtificial(basis_[i])) continue;
      int best = -1;
      double best_mag = tol_.pivot;
      for (int k = 0; k < first_artificial_; ++k) {
        if (is_basic_[k]) continue;
        const double mag = std::abs(tableau_(i, k));
        if (mag > best_mag + 1e-11 * std::max(1.0, best_mag)) {
          best_mag = mag;
          best = k;
        }
      }
      // No candidate: the row is a linear combination of the others.
      if (best < 0) continue;
      tableau_(i, num_cols_) = 0.0;
      Pivot(i, best);
      ++iterations_;
    }
  }

  void Extract(const Eigen::VectorXd& cost, LpSolution& sol) const {
    Eigen::VectorXd values = Eigen::VectorXd::Zero(num_cols_);
    for (int i = 0; i < num_rows_; ++i) values[basis_[i]] = std::max(0.0, Rhs(i));

    const std::size_t n = lp_.num_variables();
    sol.primal.resize(n);
    double objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const ColumnMap& m = maps_[j];
      double x = m.offset + m.sign * values[m.pos];
      if (m.neg >= 0) x -= values[m.neg];
      sol.primal[j] = x;
      objective += lp_.objective()[j] * x;
    }

    Eigen::VectorXd cb(num_rows_);
    for (int i = 0; i < num_rows_; ++i) cb[i] = cost[basis_[i]];
    sol.dual.resize(num_original_rows_);
    for (int i = 0; i < num_original_rows_; ++i) {
      const double scaled = cb.dot(tableau_.col(identity_col_[i]));
      sol.dual[i] = scaled * row_factor_[i];
    }
    sol.objective = objective;
    sol.status = LpStatus::kOptimal;
    sol.iterations = iterations_;
    sol.switched_to_bland = used_bland_;
  }

  const LinearProgram& lp_;
  const Tolerances& tol_;
  std::vector<ColumnMap> maps_;
  Eigen::VectorXd structural_cost_;
  Eigen::MatrixXd tableau_;
  std::vector<int> basis_;
  std::vector<int> identity_col_;
  std::vector<bool> is_basic_;
  std::vector<double> row_factor_;
  int num_structural_ = 0;
  int num_original_rows_ = 0;
  int num_rows_ = 0;
  int num_cols_ = 0;
  int first_artificial_ = 0;
  int num_artificial_ = 0;
  std::size_t iterations_ = 0;
  bool used_bland_ = false;
};

}  // namespace

LpSolution Solve(const LinearProgram& lp, const Tolerances& tol) {
  lp.Validate();
  tol.Validate();
  DenseSimplex simplex(lp, tol);
  return simplex.Run();
}

CertificateReport CheckCertificate(const LinearProgram& lp,
                                   const LpSolution& sol,
                                   const Tolerances& tol) {
  if (!sol.optimal()) {
    throw Error(ErrorCode::kInvalidProgram,
                "certificate requested for a non-optimal solution");
  }
  const std::size_t n = lp.num_variables();
  const std::size_t m = lp.num_constraints();
  if (sol.primal.size() != n || sol.dual.size() != m) {
    throw Error(ErrorCode::kShapeMismatch,
                "solution has " + std::to_string(sol.primal.size()) +
                    " primal / " + std::to_string(sol.dual.size()) +
                    " dual values for a program with " + std::to_string(n) +
                    " variables / " + std::to_string(m) + " constraints");
  }
  CertificateReport report;
  const auto& x = sol.primal;
  const auto& y = sol.dual;

  double primal_objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    primal_objective += lp.objective()[j] * x[j];
    report.max_primal_violation =
        std::max({report.max_primal_violation, lp.lower_bounds()[j] - x[j],
                  x[j] - lp.upper_bounds()[j]});
  }

  std::vector<double> reduced(lp.objective());
  double dual_objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& row = lp.constraints()[i];
    double activity = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      activity += row.coefficients[j] * x[j];
      scale = std::max(scale, std::abs(row.coefficients[j]));
      reduced[j] -= row.coefficients[j] * y[i];
    }
    if (scale == 0.0) scale = 1.0;
    double violation = 0.0;
    double sign_violation = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual:
        violation = activity - row.rhs;
        sign_violation = -y[i];
        break;
      case Relation::kGreaterEqual:
        violation = row.rhs - activity;
        sign_violation = y[i];
        break;
      case Relation::kEqual:
        violation = std::abs(activity - row.rhs);
        break;
    }
    report.max_primal_violation =
        std::max(report.max_primal_violation, violation / scale);
    report.max_dual_violation =
        std::max(report.max_dual_violation, sign_violation);
    dual_objective += row.rhs * y[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double d = reduced[j];
    if (d > 0.0) {
      if (std::isfinite(lp.upper_bounds()[j])) {
        dual_objective += d * lp.upper_bounds()[j];
      } else {
        report.max_dual_violation = std::max(report.max_dual_violation, d);
      }
    } else if (d < 0.0) {
      if (std::isfinite(lp.lower_bounds()[j])) {
        dual_objective += d * lp.lower_bounds()[j];
      } else {
        report.max_dual_violation = std::max(report.max_dual_violation, -d);
      }
    }
  }
  report.duality_gap = std::abs(primal_objective - dual_objective);
  report.pass = report.max_primal_violation <= tol.feasibility &&
                report.max_dual_violation <= tol.feasibility &&
                report.duality_gap <= tol.gap;
  return report;
}

namespace {

void PutFixed(std::ostream& out, double v) {
  if (v == kInfinity) {
    out << "inf";
  } else if (v == -kInfinity) {
    out << "-inf";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    out << buf;
  }
}

}  // namespace

void WriteLpDump(const LinearProgram& lp, std::ostream& out) {
  out << "maximize";
  for (double c : lp.objective()) {
    out << ' ';
    PutFixed(out, c);
  }
  out << '\n';
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    out << "bounds " << lp.variable_names()[j] << ' ';
    PutFixed(out, lp.lower_bounds()[j]);
    out << ' ';
    PutFixed(out, lp.upper_bounds()[j]);
    out << '\n';
  }
  for (const Constraint& row : lp.constraints()) {
    for (double a : row.coefficients) {
      PutFixed(out, a);
      out << ' ';
    }
    out << RelationToken(row.relation) << ' ';
    PutFixed(out, row.rhs);
    out << '\n';
  }
}

}  // namespace mpss
