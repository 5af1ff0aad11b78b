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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mpss/error.h"
#include "test_util.h"

namespace mpss {
namespace {

using ::mpss::testing::RandomFeasibleLp;
using ::mpss::testing::ThrownCode;
using ::mpss::testing::VertexEnumerationMax;

LinearProgram SingleBound(double rhs) {
  LinearProgram lp;
  lp.AddVariable("x", 1.0);
  lp.AddConstraint({1.0}, Relation::kLessEqual, rhs);
  return lp;
}

LinearProgram TwoVariable() {
  LinearProgram lp;
  lp.AddVariable("a", 3.0);
  lp.AddVariable("b", 2.0);
  lp.AddConstraint({1.0, 1.0}, Relation::kLessEqual, 4.0);
  lp.AddConstraint({1.0, 3.0}, Relation::kLessEqual, 6.0);
  return lp;
}

TEST(SolveTest, SingleBound) {
  const LpSolution sol = Solve(SingleBound(1.0));
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
}

TEST(SolveTest, ContradictoryBoundIsInfeasible) {
  EXPECT_EQ(Solve(SingleBound(-1.0)).status, LpStatus::kInfeasible);
}

TEST(SolveTest, TwoVariableVertex) {
  const LinearProgram lp = TwoVariable();
  // Frozen from the vertex-enumeration oracle before trusting the solver.
  ASSERT_NEAR(*VertexEnumerationMax(lp), 12.0, 1e-12);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 12.0, 1e-9);
  EXPECT_NEAR(sol.primal[0], 4.0, 1e-9);
  EXPECT_NEAR(sol.primal[1], 0.0, 1e-9);
  // Basis {a, s2}: y solves B^T y = c_B, so y = (3, 0).
  ASSERT_EQ(sol.dual.size(), 2u);
  EXPECT_NEAR(sol.dual[0], 3.0, 1e-9);
  EXPECT_NEAR(sol.dual[1], 0.0, 1e-9);
}

TEST(SolveTest, Unbounded) {
  LinearProgram lp;
  lp.AddVariable("x", 1.0);
  lp.AddVariable("y", 0.0);
  lp.AddConstraint({1.0, -1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kUnbounded);
}

TEST(SolveTest, GreaterEqualAndEquality) {
  // min x + y  s.t. x + 2y >= 4, x - y = 1  ->  x = 2, y = 1.
  LinearProgram lp;
  lp.AddVariable("x", -1.0);
  lp.AddVariable("y", -1.0);
  lp.AddConstraint({1.0, 2.0}, Relation::kGreaterEqual, 4.0);
  lp.AddConstraint({1.0, -1.0}, Relation::kEqual, 1.0);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], 2.0, 1e-9);
  EXPECT_NEAR(sol.primal[1], 1.0, 1e-9);
  EXPECT_TRUE(CheckCertificate(lp, sol).pass);
}

TEST(SolveTest, ConflictingEqualitiesAreInfeasible) {
  LinearProgram lp;
  lp.AddVariable("x", 1.0);
  lp.AddVariable("y", 1.0);
  lp.AddConstraint({1.0, 1.0}, Relation::kEqual, 1.0);
  lp.AddConstraint({1.0, 1.0}, Relation::kEqual, 2.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kInfeasible);
}

TEST(SolveTest, FreeAndBoundedVariables) {
  // max -x + y  with x free, x >= -3 as a row, y in [1, 2].
  LinearProgram lp;
  lp.AddVariable("x", -1.0, -kInfinity, kInfinity);
  lp.AddVariable("y", 1.0, 1.0, 2.0);
  lp.AddConstraint({1.0, 0.0}, Relation::kGreaterEqual, -3.0);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], -3.0, 1e-9);
  EXPECT_NEAR(sol.primal[1], 2.0, 1e-9);
  EXPECT_NEAR(sol.objective, 5.0, 1e-9);
  EXPECT_TRUE(CheckCertificate(lp, sol).pass);
}

TEST(SolveTest, UpperBoundOnlyVariable) {
  // max x with x in (-inf, 7].
  LinearProgram lp;
  lp.AddVariable("x", 1.0, -kInfinity, 7.0);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], 7.0, 1e-9);
  EXPECT_TRUE(CheckCertificate(lp, sol).pass);
}

TEST(SolveTest, NegativeLowerBound) {
  // min x over [-2, 5].
  LinearProgram lp;
  lp.AddVariable("x", -1.0, -2.0, 5.0);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], -2.0, 1e-9);
  EXPECT_TRUE(CheckCertificate(lp, sol).pass);
}

// Beale's cycling example: Dantzig pricing with a naive tie rule cycles.
LinearProgram Beale() {
  LinearProgram lp;
  lp.AddVariable("x4", 0.75);
  lp.AddVariable("x5", -20.0);
  lp.AddVariable("x6", 0.5);
  lp.AddVariable("x7", -6.0);
  lp.AddConstraint({0.25, -8.0, -1.0, 9.0}, Relation::kLessEqual, 0.0);
  lp.AddConstraint({0.5, -12.0, -0.5, 3.0}, Relation::kLessEqual, 0.0);
  lp.AddConstraint({0.0, 0.0, 1.0, 0.0}, Relation::kLessEqual, 1.0);
  return lp;
}

TEST(SolveTest, DegenerateCyclingExampleTerminates) {
  for (std::size_t limit : {std::size_t{1}, std::size_t{2}, std::size_t{1000}}) {
    Tolerances tol;
    tol.degenerate_pivot_limit = limit;
    tol.iteration_limit = 500;
    const LpSolution sol = Solve(Beale(), tol);
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "limit " << limit;
    EXPECT_NEAR(sol.objective, 1.25, 1e-9);
    EXPECT_TRUE(CheckCertificate(Beale(), sol).pass);
  }
}

TEST(SolveTest, IterationLimitIsAnError) {
  Tolerances tol;
  tol.iteration_limit = 1;
  LinearProgram lp = TwoVariable();
  lp.AddConstraint({1.0, 1.0}, Relation::kGreaterEqual, 1.0);
  EXPECT_EQ(ThrownCode([&] { Solve(lp, tol); }), ErrorCode::kIterationLimit);
}

TEST(SolveTest, InvalidProgram) {
  LinearProgram lp = TwoVariable();
  lp.mutable_constraints()[0].coefficients.pop_back();
  EXPECT_EQ(ThrownCode([&] { Solve(lp); }), ErrorCode::kInvalidProgram);

  LinearProgram nan_rhs = TwoVariable();
  nan_rhs.mutable_constraints()[1].rhs = std::nan("");
  EXPECT_EQ(ThrownCode([&] { Solve(nan_rhs); }), ErrorCode::kInvalidProgram);

  LinearProgram lp2;
  lp2.AddVariable("x");
  EXPECT_EQ(ThrownCode([&] { lp2.AddConstraint({1.0, 2.0}, Relation::kEqual, 0); }),
            ErrorCode::kInvalidProgram);
  lp2.set_bounds(0, 2.0, 1.0);
  EXPECT_EQ(ThrownCode([&] { Solve(lp2); }), ErrorCode::kInvalidProgram);
}

TEST(SolveTest, EmptyProgram) {
  LinearProgram lp;
  const LpSolution sol = Solve(lp);
  EXPECT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, 0.0);
}

TEST(SolveTest, Deterministic) {
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    const LinearProgram lp = RandomFeasibleLp(rng, 8, 8);
    const LpSolution a = Solve(lp);
    const LpSolution b = Solve(lp);
    ASSERT_EQ(a.status, b.status);
    EXPECT_EQ(a.primal, b.primal);
    EXPECT_EQ(a.dual, b.dual);
    EXPECT_EQ(a.iterations, b.iterations);
  }
}

TEST(SolveTest, MatchesVertexEnumeration) {
  std::mt19937 rng(20260101);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const LinearProgram lp = RandomFeasibleLp(rng, 3, 4);
    const auto oracle = VertexEnumerationMax(lp);
    ASSERT_TRUE(oracle.has_value()) << "instance " << i;
    const LpSolution sol = Solve(lp);
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "instance " << i;
    EXPECT_NEAR(sol.objective, *oracle, 1e-8) << "instance " << i;
    ++compared;
  }
  EXPECT_EQ(compared, 300);
}

TEST(SolveTest, RandomFeasibleBoundedCertify) {
  std::mt19937 rng(42);
  for (int i = 0; i < 500; ++i) {
    const LinearProgram lp = RandomFeasibleLp(rng, 8, 8);
    const LpSolution sol = Solve(lp);
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "instance " << i;
    const CertificateReport cert = CheckCertificate(lp, sol);
    EXPECT_TRUE(cert.pass) << "instance " << i << " primal "
                           << cert.max_primal_violation << " dual "
                           << cert.max_dual_violation << " gap "
                           << cert.duality_gap;
  }
}

TEST(CertificateTest, SingleBound) {
  const LinearProgram lp = SingleBound(1.0);
  const CertificateReport cert = CheckCertificate(lp, Solve(lp));
  EXPECT_TRUE(cert.pass);
  EXPECT_NEAR(cert.duality_gap, 0.0, 1e-12);
}

TEST(CertificateTest, InjectedViolation) {
  const LinearProgram lp = SingleBound(1.0);
  LpSolution sol = Solve(lp);
  sol.primal[0] = 2.0;
  sol.objective = 2.0;
  const CertificateReport cert = CheckCertificate(lp, sol);
  EXPECT_FALSE(cert.pass);
  EXPECT_NEAR(cert.max_primal_violation, 1.0, 1e-12);
}

TEST(CertificateTest, HandDuals) {
  const LinearProgram lp = TwoVariable();
  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.primal = {4.0, 0.0};
  sol.dual = {3.0, 0.0};
  sol.objective = 12.0;
  const CertificateReport cert = CheckCertificate(lp, sol);
  EXPECT_TRUE(cert.pass);
  EXPECT_LE(cert.duality_gap, 1e-7);
  EXPECT_LE(cert.max_dual_violation, 1e-12);

  // Wrong duals: y = (0, 1) leaves reduced cost 3 - 1 = 2 on a.
  sol.dual = {0.0, 1.0};
  EXPECT_FALSE(CheckCertificate(lp, sol).pass);
}

TEST(CertificateTest, ShapeMismatch) {
  const LinearProgram lp = TwoVariable();
  LpSolution sol = Solve(lp);
  sol.primal.push_back(0.0);
  EXPECT_EQ(ThrownCode([&] { CheckCertificate(lp, sol); }),
            ErrorCode::kShapeMismatch);
  sol = Solve(lp);
  sol.dual.pop_back();
  EXPECT_EQ(ThrownCode([&] { CheckCertificate(lp, sol); }),
            ErrorCode::kShapeMismatch);
}

TEST(LpDumpTest, Format) {
  LinearProgram lp;
  lp.AddVariable("x", 1.0);
  lp.AddVariable("y", -0.5, -kInfinity, 2.0);
  lp.AddConstraint({1.0, 2.0}, Relation::kLessEqual, 3.0);
  lp.AddConstraint({1.0, -1.0}, Relation::kGreaterEqual, -1.0);
  lp.AddConstraint({0.0, 1.0}, Relation::kEqual, 0.25);
  std::ostringstream out;
  WriteLpDump(lp, out);
  EXPECT_EQ(out.str(),
            "maximize 1.000000000000 -0.500000000000\n"
            "bounds x 0.000000000000 inf\n"
            "bounds y -inf 2.000000000000\n"
            "1.000000000000 2.000000000000 <= 3.000000000000\n"
            "1.000000000000 -1.000000000000 >= -1.000000000000\n"
            "0.000000000000 1.000000000000 = 0.250000000000\n");
}

TEST(ToleranceTest, Validate) {
  Tolerances tol;
  EXPECT_NO_THROW(tol.Validate());
  tol.feasibility = -1.0;
  EXPECT_EQ(ThrownCode([&] { tol.Validate(); }), ErrorCode::kInvalidProgram);
}

}  // namespace
}  // namespace mpss
