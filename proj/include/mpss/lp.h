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

// Dense linear programming: a two-phase primal simplex and an independent
// optimality-certificate checker.
//
// Problems are always stated as maximization:
//
//   maximize    c'x
//   subject to  a_i'x  {<=, >=, =}  b_i      for every constraint i
//               lower_j <= x_j <= upper_j    for every variable j
//
// Lower bounds may be -infinity and upper bounds +infinity. Internally every
// variable is shifted, reflected or split into nonnegative parts, finite upper
// bounds become explicit rows, and each row is scaled by its largest
// coefficient magnitude. Reported primal and dual values are always in the
// caller's original units.

#ifndef MPSS_LP_H_
#define MPSS_LP_H_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace mpss {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

std::string_view RelationToken(Relation relation);

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  LinearProgram() = default;

  // Appends a variable with objective coefficient `objective`; returns its
  // index. Existing constraints are padded with a zero coefficient.
  std::size_t AddVariable(std::string name, double objective = 0.0,
                          double lower = 0.0, double upper = kInfinity);

  // `coefficients` must have one entry per variable.
  std::size_t AddConstraint(std::vector<double> coefficients,
                            Relation relation, double rhs);

  std::size_t num_variables() const { return objective_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& lower_bounds() const { return lower_; }
  const std::vector<double>& upper_bounds() const { return upper_; }
  const std::vector<std::string>& variable_names() const { return names_; }

  void set_objective(std::size_t var, double value) { objective_[var] = value; }
  void set_bounds(std::size_t var, double lower, double upper);

  // Test and tooling access; Validate() catches anything these break.
  std::vector<Constraint>& mutable_constraints() { return constraints_; }

  // Throws Error(kInvalidProgram) naming the first violated invariant.
  void Validate() const;

 private:
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::string> names_;
};

struct Tolerances {
  double feasibility = 1e-7;
  double pivot = 1e-9;
  double gap = 1e-7;
  std::size_t iteration_limit = 100000;
  // Consecutive degenerate pivots before pricing switches to Bland's rule.
  std::size_t degenerate_pivot_limit = 1000;

  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // Empty unless status == kOptimal.
  std::vector<double> primal;
  // One multiplier per constraint, sign convention: >= 0 on <= rows,
  // <= 0 on >= rows, free on equalities. Empty unless optimal.
  std::vector<double> dual;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool switched_to_bland = false;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Throws Error(kInvalidProgram) for malformed input and Error(kIterationLimit)
// when the pivot budget is exhausted. Never returns a non-certified optimum
// silently: callers audit with CheckCertificate.
LpSolution Solve(const LinearProgram& lp, const Tolerances& tol = {});

struct CertificateReport {
  double max_primal_violation = 0.0;
  double max_dual_violation = 0.0;
  double duality_gap = 0.0;
  bool pass = false;
};

// Recomputes primal residuals, dual sign/reduced-cost residuals and the
// duality gap directly from `lp` and the reported vectors. Row residuals are
// divided by the row's largest coefficient magnitude.
// Throws Error(kShapeMismatch) on dimension mismatch and
// Error(kInvalidProgram) when `sol` is not optimal.
CertificateReport CheckCertificate(const LinearProgram& lp,
                                   const LpSolution& sol,
                                   const Tolerances& tol = {});

// Debug dump, fixed-point text:
//   maximize <c_1> ... <c_n>
//   bounds <name> <lower> <upper>          (one line per variable)
//   <a_i1> ... <a_in> <= | >= | = <b_i>    (one line per constraint)
// Infinite bounds print as "-inf" / "inf".
void WriteLpDump(const LinearProgram& lp, std::ostream& out);

}  // namespace mpss

#endif  // MPSS_LP_H_
