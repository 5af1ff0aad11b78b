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

#include "mpss/engine.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "mpss/error.h"
#include "test_util.h"

namespace mpss {
namespace {

using ::mpss::testing::RandomParallel;
using ::mpss::testing::RandomShared;
using ::mpss::testing::RatioOracle;
using ::mpss::testing::Table1;
using ::mpss::testing::ThrownCode;

struct Triple {
  double first, second, overall;
};
// Derived with the single-input ratio oracle (see dea_models_test).
constexpr Triple kTable1[] = {{1.0, 1.25, 2.25},
                              {0.0, 0.0, 0.0},
                              {1.9, 0.0, 1.9},
                              {0.5, 1.25, 1.75},
                              {3.5, 2.625, 6.125}};

const OmegaWeights kOnes = OmegaWeights::Uniform(2);

void ExpectSameResult(const MpssResult& a, const MpssResult& b) {
  EXPECT_EQ(a.dmu_id, b.dmu_id);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.error, b.error);
  if (!a.ok()) return;
  EXPECT_EQ(a.score, b.score);
  ASSERT_EQ(a.subsystems.size(), b.subsystems.size());
  for (std::size_t t = 0; t < a.subsystems.size(); ++t) {
    EXPECT_EQ(a.subsystems[t].score, b.subsystems[t].score);
  }
}

TEST(EvaluateTest, Table1Decoupled) {
  const ParallelDataset ds = Table1();
  for (std::size_t o = 0; o < 5; ++o) {
    const MpssResult r = Evaluate(ds, o, kOnes, StructureMode::kDecoupled);
    ASSERT_TRUE(r.ok()) << r.error;
    EXPECT_EQ(r.dmu_id, ds.dmu_ids[o]);
    EXPECT_NEAR(r.subsystems[0].score, kTable1[o].first, 1e-9);
    EXPECT_NEAR(r.subsystems[1].score, kTable1[o].second, 1e-9);
    EXPECT_NEAR(r.score, kTable1[o].overall, 1e-9);
    EXPECT_EQ(r.lps.size(), 2u);
    EXPECT_TRUE(r.audited());
  }
}

TEST(EvaluateTest, JointTable1) {
  const ParallelDataset ds = Table1();
  const MpssResult a = Evaluate(ds, 0, kOnes, StructureMode::kJoint);
  ASSERT_TRUE(a.ok()) << a.error;
  EXPECT_NEAR(a.score, 0.3, 1e-7);
  EXPECT_LE(VerifyDecomposition(a, kOnes, 1e-7).residual, 1e-7);

  const MpssResult b = Evaluate(ds, 1, kOnes, StructureMode::kJoint);
  ASSERT_TRUE(b.ok()) << b.error;
  EXPECT_NEAR(b.score, -2.0 / 3.0, 1e-7);
  bool negative = false;
  for (const SubsystemScore& s : b.subsystems) negative |= s.score < -1e-6;
  EXPECT_TRUE(negative);
  EXPECT_FALSE(b.warnings.empty());
}

TEST(EvaluateTest, ErrorsAreCapturedPerDmu) {
  const std::vector<MpssResult> results =
      EvaluateAll(Table1(), OmegaWeights{{1.0}}, StructureMode::kJoint);
  ASSERT_EQ(results.size(), 5u);
  for (const MpssResult& r : results) {
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.error.find("InvalidDataset"), std::string::npos) << r.error;
    EXPECT_EQ(ThrownCode([&] { Classify(r, 1e-6); }),
              ErrorCode::kUnclassifiable);
  }
}

TEST(ClassifyTest, Table1) {
  const ParallelDataset ds = Table1();
  const Classification b =
      Classify(Evaluate(ds, 1, kOnes, StructureMode::kDecoupled), 1e-6);
  EXPECT_TRUE(b.overall);
  EXPECT_EQ(b.subsystems, (std::vector<bool>{true, true}));
  const Classification c =
      Classify(Evaluate(ds, 2, kOnes, StructureMode::kDecoupled), 1e-6);
  EXPECT_FALSE(c.overall);
  EXPECT_EQ(c.subsystems, (std::vector<bool>{false, true}));
}

TEST(ClassifyTest, ToleranceBoundary) {
  const double tau = 1e-6;
  MpssResult r;
  r.status = LpStatus::kOptimal;
  r.subsystems.resize(2);
  r.subsystems[0].score = tau / 2;
  r.subsystems[1].score = tau / 2;
  r.score = tau;
  Classification c = Classify(r, tau);
  EXPECT_EQ(c.subsystems, (std::vector<bool>{true, true}));
  EXPECT_TRUE(c.overall);
  r.score = 2 * tau;
  EXPECT_FALSE(Classify(r, tau).overall);
}

TEST(VerifyDecompositionTest, Table1) {
  const ParallelDataset ds = Table1();
  const auto d = VerifyDecomposition(
      Evaluate(ds, 3, kOnes, StructureMode::kDecoupled), kOnes, 1e-7);
  EXPECT_TRUE(d.pass);
  EXPECT_EQ(d.residual, 0.0);
  EXPECT_TRUE(VerifyDecomposition(
                  Evaluate(ds, 0, kOnes, StructureMode::kDecoupled), kOnes, 1e-7)
                  .pass);
}

TEST(EvaluateAllTest, Table1AndEmpty) {
  const auto results = EvaluateAll(Table1(), kOnes, StructureMode::kDecoupled);
  ASSERT_EQ(results.size(), 5u);
  for (std::size_t o = 0; o < 5; ++o) {
    EXPECT_NEAR(results[o].score, kTable1[o].overall, 1e-9);
  }
  ParallelDataset empty = Table1();
  empty.dmu_ids.clear();
  for (auto& m : empty.inputs) m.resize(0, 1);
  for (auto& m : empty.outputs) m.resize(0, 1);
  EXPECT_TRUE(EvaluateAll(empty, kOnes, StructureMode::kDecoupled).empty());
}

TEST(EvaluateAllTest, IdenticalDmusScoreZero) {
  ParallelDataset ds = Table1();
  for (auto* block : {&ds.inputs, &ds.outputs}) {
    for (Matrix& m : *block) m.rowwise() = Eigen::RowVectorXd(m.row(0));
  }
  for (const MpssResult& r : EvaluateAll(ds, kOnes, StructureMode::kDecoupled)) {
    ASSERT_TRUE(r.ok());
    // Oracle: every ratio difference is zero.
    EXPECT_NEAR(RatioOracle(ds.inputs[0].col(0), ds.outputs[0].col(0), r.dmu_index),
                0.0, 1e-15);
    EXPECT_NEAR(r.score, 0.0, 1e-9);
  }
}

// Joint mode on identical DMUs: each subsystem block forces theta^t >= 1 and
// phi^t <= 1, the system block forces theta >= 1 and phi <= 1, so with
// W = sum of omega the optimum is min(1, W) - max(1, W) = -|W - 1|.
TEST(EvaluateAllTest, IdenticalDmusJointClosedForm) {
  ParallelDataset ds = Table1();
  for (auto* block : {&ds.inputs, &ds.outputs}) {
    for (Matrix& m : *block) m.rowwise() = Eigen::RowVectorXd(m.row(0));
  }
  for (const OmegaWeights& omega :
       {kOnes, OmegaWeights{{0.5, 0.5}}, OmegaWeights{{0.25, 0.5}}}) {
    const double w = omega.values[0] + omega.values[1];
    for (const MpssResult& r : EvaluateAll(ds, omega, StructureMode::kJoint)) {
      ASSERT_TRUE(r.ok());
      EXPECT_NEAR(r.score, -std::abs(w - 1.0), 1e-9);
    }
  }
}

TEST(EvaluateAllTest, ParallelMatchesSerial) {
  std::mt19937 rng(23);
  EngineOptions options;
  options.jobs = 4;
  for (int i = 0; i < 5; ++i) {
    const ParallelDataset ds = RandomParallel(rng, 12, 2, 2, 2);
    for (StructureMode mode : {StructureMode::kDecoupled, StructureMode::kJoint}) {
      const auto par = EvaluateAll(ds, kOnes, mode, options);
      const auto ser = EvaluateAllSerial(ds, kOnes, mode, options);
      ASSERT_EQ(par.size(), ser.size());
      for (std::size_t o = 0; o < par.size(); ++o) ExpectSameResult(par[o], ser[o]);
    }
  }
}

TEST(EvaluateAllTest, PermutationInvariance) {
  std::mt19937 rng(29);
  for (int i = 0; i < 5; ++i) {
    const ParallelDataset ds = RandomParallel(rng, 7, 2, 2, 1);
    std::vector<std::size_t> perm(ds.num_dmus());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ParallelDataset shuffled = ds;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      shuffled.dmu_ids[k] = ds.dmu_ids[perm[k]];
      for (std::size_t t = 0; t < 2; ++t) {
        shuffled.inputs[t].row(k) = ds.inputs[t].row(perm[k]);
        shuffled.outputs[t].row(k) = ds.outputs[t].row(perm[k]);
      }
    }
    for (StructureMode mode : {StructureMode::kDecoupled, StructureMode::kJoint}) {
      const auto base = EvaluateAll(ds, kOnes, mode);
      const auto moved = EvaluateAll(shuffled, kOnes, mode);
      for (std::size_t k = 0; k < perm.size(); ++k) {
        ASSERT_EQ(moved[k].dmu_id, base[perm[k]].dmu_id);
        EXPECT_NEAR(moved[k].score, base[perm[k]].score, 1e-7);
      }
    }
  }
}

// Adding a DMU only enlarges the reference hull.
TEST(EvaluateAllTest, AddingDmusNeverLowersScores) {
  std::mt19937 rng(31);
  for (int i = 0; i < 10; ++i) {
    const ParallelDataset big = RandomParallel(rng, 8, 2, 1, 2);
    ParallelDataset small = big;
    small.dmu_ids.pop_back();
    for (std::size_t t = 0; t < 2; ++t) {
      small.inputs[t].conservativeResize(7, Eigen::NoChange);
      small.outputs[t].conservativeResize(7, Eigen::NoChange);
    }
    const auto a = EvaluateAll(small, kOnes, StructureMode::kDecoupled);
    const auto b = EvaluateAll(big, kOnes, StructureMode::kDecoupled);
    for (std::size_t o = 0; o < 7; ++o) {
      for (std::size_t t = 0; t < 2; ++t) {
        EXPECT_GE(b[o].subsystems[t].score, a[o].subsystems[t].score - 1e-9);
      }
    }
  }
}

TEST(EvaluateAllTest, JointNeverExceedsDecoupled) {
  std::mt19937 rng(37);
  for (int i = 0; i < 20; ++i) {
    const ParallelDataset ds = RandomParallel(rng, 2 + i % 7, 2 + i % 2, 1 + i % 2, 1 + (i / 2) % 2);
    const OmegaWeights omega = OmegaWeights::Uniform(ds.num_subsystems());
    const auto joint = EvaluateAll(ds, omega, StructureMode::kJoint);
    const auto dec = EvaluateAll(ds, omega, StructureMode::kDecoupled);
    for (std::size_t o = 0; o < ds.num_dmus(); ++o) {
      if (!joint[o].ok()) continue;
      EXPECT_LE(joint[o].score, dec[o].score + 1e-7);
    }
  }
}

TEST(EvaluateAllTest, DecompositionIdentityAndEquivalence) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> weight(0.2, 2.0);
  const double tau = kDefaultClassTolerance;
  for (int i = 0; i < 40; ++i) {
    const ParallelDataset ds = RandomParallel(rng, 1 + i % 8, 1 + i % 3, 1 + i % 2, 1 + (i / 3) % 2);
    OmegaWeights omega;
    for (std::size_t t = 0; t < ds.num_subsystems(); ++t) omega.values.push_back(weight(rng));
    for (StructureMode mode : {StructureMode::kDecoupled, StructureMode::kJoint}) {
      for (const MpssResult& r : EvaluateAll(ds, omega, mode)) {
        if (!r.ok()) continue;
        EXPECT_LE(VerifyDecomposition(r, omega, 1e-7).residual, 1e-7);
        const Classification c = Classify(r, tau);
        bool all_nonnegative = true;
        for (const SubsystemScore& s : r.subsystems) all_nonnegative &= s.score >= -tau;
        if (!all_nonnegative) continue;
        const bool all_sub = std::all_of(c.subsystems.begin(), c.subsystems.end(),
                                         [](bool b) { return b; });
        EXPECT_EQ(c.overall, all_sub);
      }
    }
  }
}

TEST(SummarizeTest, Examples) {
  ColumnSummary s = Summarize({2.25, 0.0, 1.9, 1.75, 6.125}, 1e-6);
  EXPECT_EQ(s.mpss_count, 1u);
  EXPECT_EQ(s.evaluated, 5u);
  EXPECT_DOUBLE_EQ(s.min, 0.0);
  EXPECT_DOUBLE_EQ(s.max, 6.125);
  EXPECT_NEAR(s.mean, 2.405, 1e-12);

  s = Summarize({0.0}, 1e-6);
  EXPECT_EQ(s.mpss_count, 1u);
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.min, 0.0);
  EXPECT_EQ(s.max, 0.0);

  s = Summarize({1.0, 2.0, 3.0}, 1e-6);
  EXPECT_EQ(s.mpss_count, 0u);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 3.0);

  s = Summarize({std::nullopt, std::nullopt}, 1e-6);
  EXPECT_FALSE(s.available);
  s = Summarize({std::nullopt, 4.0}, 1e-6);
  EXPECT_TRUE(s.available);
  EXPECT_EQ(s.evaluated, 1u);
  EXPECT_EQ(s.mean, 4.0);
}

TEST(ResultsTableTest, Table1Layout) {
  const auto results = EvaluateAll(Table1(), kOnes, StructureMode::kDecoupled);
  const ScoreTable table = ResultsTable(results, {"I", "II"}, 1e-6);
  EXPECT_EQ(table.columns, (std::vector<std::string>{"MPSS^I", "MPSS^II", "MPSS^S"}));
  EXPECT_EQ(table.row_labels, (std::vector<std::string>{"A", "B", "C", "D", "E"}));
  ASSERT_EQ(table.footer.size(), 3u);
  EXPECT_EQ(table.footer[2].mpss_count, 1u);
  EXPECT_NEAR(table.footer[2].mean, 2.405, 1e-9);
  EXPECT_TRUE(ResultsTable({}, {"I", "II"}, 1e-6).footer.empty());
}

TEST(SweepTest, UniformColumnsIdentical) {
  std::mt19937 rng(43);
  const SharedInputDataset ds = RandomShared(rng, 6, 3, 1, 1);
  for (StructureMode mode : {StructureMode::kDecoupled, StructureMode::kJoint}) {
    const SweepResult sweep = Sweep(ds, 0.1, kOnes, mode, AlphaMode::kUniform);
    ASSERT_EQ(sweep.cells.size(), 9u);
    for (std::size_t k = 1; k < 9; ++k) {
      for (std::size_t o = 0; o < 6; ++o) {
        const MpssResult& a = sweep.cells[0][o];
        const MpssResult& b = sweep.cells[k][o];
        ASSERT_EQ(a.ok(), b.ok());
        if (!a.ok()) continue;
        EXPECT_NEAR(a.score, b.score, 1e-6);
        for (std::size_t t = 0; t < 2; ++t) {
          EXPECT_NEAR(a.subsystems[t].score, b.subsystems[t].score, 1e-6);
        }
      }
    }
    const ScoreTable table = SweepTable(sweep, std::nullopt);
    EXPECT_EQ(table.columns.size(), 9u);
    EXPECT_EQ(table.columns[0], "k=1");
  }
}

TEST(SweepTest, HalfEpsilonSingleColumn) {
  std::mt19937 rng(47);
  const SharedInputDataset ds = RandomShared(rng, 4, 2, 1, 1);
  const SweepResult sweep =
      Sweep(ds, 0.5, kOnes, StructureMode::kDecoupled, AlphaMode::kUniform);
  ASSERT_EQ(sweep.cells.size(), 1u);
  EXPECT_EQ(*sweep.cells[0][0].alpha, 0.5);
  EXPECT_EQ(SweepTable(sweep, 0).columns, std::vector<std::string>{"k=1"});
}

// In target-only mode the first subsystem's scores rise with alpha, so fewer
// DMUs sit at zero: the count is nonincreasing in k.
TEST(SweepTest, TargetOnlyFirstSubsystemCount) {
  std::mt19937 rng(53);
  bool changed = false;
  for (int i = 0; i < 5; ++i) {
    const SharedInputDataset ds = RandomShared(rng, 5, 2, 1, 1);
    const SweepResult sweep = Sweep(ds, 0.1, kOnes, StructureMode::kDecoupled,
                                    AlphaMode::kTargetOnly);
    for (std::size_t k = 1; k < 9; ++k) {
      const auto prev = sweep.ColumnSummaryAt(k - 1, 0).mpss_count;
      const auto cur = sweep.ColumnSummaryAt(k, 0).mpss_count;
      EXPECT_LE(cur, prev) << "k=" << k + 1;
      changed |= cur != prev;
      for (std::size_t o = 0; o < 5; ++o) {
        EXPECT_GE(sweep.cells[k][o].subsystems[0].score,
                  sweep.cells[k - 1][o].subsystems[0].score - 1e-9);
      }
    }
  }
  EXPECT_TRUE(changed);
}

TEST(SweepTest, ParallelMatchesSerial) {
  std::mt19937 rng(59);
  const SharedInputDataset ds = RandomShared(rng, 9, 3, 1, 2);
  EngineOptions options;
  options.jobs = 3;
  for (StructureMode mode : {StructureMode::kDecoupled, StructureMode::kJoint}) {
    for (AlphaMode am : {AlphaMode::kUniform, AlphaMode::kTargetOnly}) {
      const SweepResult a = Sweep(ds, 0.25, kOnes, mode, am, options);
      const SweepResult b = SweepSerial(ds, 0.25, kOnes, mode, am, options);
      ASSERT_EQ(a.cells.size(), b.cells.size());
      for (std::size_t k = 0; k < a.cells.size(); ++k) {
        for (std::size_t o = 0; o < ds.num_dmus(); ++o) {
          ExpectSameResult(a.cells[k][o], b.cells[k][o]);
        }
      }
    }
  }
}

TEST(SweepTest, BadEpsilon) {
  std::mt19937 rng(61);
  const SharedInputDataset ds = RandomShared(rng, 3, 1, 1, 1);
  EXPECT_EQ(ThrownCode([&] {
              Sweep(ds, 0.3, kOnes, StructureMode::kDecoupled, AlphaMode::kUniform);
            }),
            ErrorCode::kEpsilonNotUnitFraction);
}

}  // namespace
}  // namespace mpss
