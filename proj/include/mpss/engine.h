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

// Turns LP solves into MPSS scores: per-DMU evaluation, classification,
// decomposition checks, batch and alpha-grid sweeps, and summary tables.
//
// Batch entry points come in two flavours. EvaluateAll / Sweep distribute
// DMUs (and alpha values) over OpenMP threads; EvaluateAllSerial /
// SweepSerial are the plain loops the parallel versions are tested against.
// Both produce identical results in DMU order.

#ifndef MPSS_ENGINE_H_
#define MPSS_ENGINE_H_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mpss/dea_models.h"
#include "mpss/lp.h"

namespace mpss {

inline constexpr double kDefaultClassTolerance = 1e-6;
// Matches tables printed at four decimals, where 0.0000 may hide < 5e-5.
inline constexpr double kDisplayClassTolerance = 5e-5;

struct EngineOptions {
  Tolerances lp;
  double class_tolerance = kDefaultClassTolerance;
  // OpenMP thread count for batch calls; 0 keeps the runtime default.
  int jobs = 0;
};

struct LpRecord {
  std::string label;
  LpStatus status = LpStatus::kInfeasible;
  std::size_t iterations = 0;
  // Set only for optimal solves whose certificate passed.
  bool audited = false;
  CertificateReport certificate;
};

struct SubsystemScore {
  double theta = std::numeric_limits<double>::quiet_NaN();
  double phi = std::numeric_limits<double>::quiet_NaN();
  double score = std::numeric_limits<double>::quiet_NaN();
  bool mpss = false;
};

struct MpssResult {
  std::string dmu_id;
  std::size_t dmu_index = 0;
  StructureMode mode = StructureMode::kDecoupled;
  std::optional<double> alpha;
  // Optimal only when every LP behind the result is optimal.
  LpStatus status = LpStatus::kInfeasible;
  std::vector<SubsystemScore> subsystems;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double phi = std::numeric_limits<double>::quiet_NaN();
  double score = std::numeric_limits<double>::quiet_NaN();
  bool overall_mpss = false;
  std::vector<LpRecord> lps;
  std::vector<std::string> warnings;
  // Non-empty when evaluation threw (bad index, iteration limit, ...).
  std::string error;

  bool ok() const { return error.empty() && status == LpStatus::kOptimal; }
  bool audited() const;
};

MpssResult Evaluate(const ParallelDataset& ds, std::size_t o,
                    const OmegaWeights& omega, StructureMode mode,
                    const EngineOptions& options = {});

MpssResult EvaluateShared(const SharedInputDataset& ds, std::size_t o,
                          double alpha, const OmegaWeights& omega,
                          StructureMode mode, AlphaMode alpha_mode,
                          const EngineOptions& options = {});

struct Classification {
  bool overall = false;
  std::vector<bool> subsystems;
};

// Score <= tolerance means MPSS. Throws Error(kUnclassifiable) for results
// that are not optimal.
Classification Classify(const MpssResult& result, double tolerance);

struct DecompositionCheck {
  double residual = 0.0;
  bool pass = false;
};

// |overall - sum_t w_t score_t| <= tolerance.
DecompositionCheck VerifyDecomposition(const MpssResult& result,
                                       const OmegaWeights& omega,
                                       double tolerance);

std::vector<MpssResult> EvaluateAll(const ParallelDataset& ds,
                                    const OmegaWeights& omega,
                                    StructureMode mode,
                                    const EngineOptions& options = {});
std::vector<MpssResult> EvaluateAllSerial(const ParallelDataset& ds,
                                          const OmegaWeights& omega,
                                          StructureMode mode,
                                          const EngineOptions& options = {});

// Shared dataset at one fixed split.
std::vector<MpssResult> EvaluateAllShared(const SharedInputDataset& ds,
                                          double alpha,
                                          const OmegaWeights& omega,
                                          StructureMode mode,
                                          AlphaMode alpha_mode,
                                          const EngineOptions& options = {});

struct ColumnSummary {
  // "No." row: scores at or below the classification tolerance.
  std::size_t mpss_count = 0;
  std::size_t evaluated = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  // False when every cell of the column failed ("n/a").
  bool available = false;
};

ColumnSummary Summarize(const std::vector<std::optional<double>>& scores,
                        double tolerance);

// Score of one column of a result: subsystem t, or the overall score when
// `subsystem` is nullopt. Empty for failed results.
std::optional<double> ScoreOf(const MpssResult& result,
                              std::optional<std::size_t> subsystem);

struct SweepResult {
  AlphaGrid grid;
  StructureMode mode = StructureMode::kDecoupled;
  AlphaMode alpha_mode = AlphaMode::kUniform;
  std::vector<std::string> subsystem_names;
  std::vector<std::string> dmu_ids;
  // cells[k][o]: result at grid.alphas[k] for DMU o.
  std::vector<std::vector<MpssResult>> cells;
  double class_tolerance = kDefaultClassTolerance;

  // Summary of column k of the overall table (nullopt) or of subsystem t.
  ColumnSummary ColumnSummaryAt(std::size_t k,
                                std::optional<std::size_t> subsystem) const;
};

SweepResult Sweep(const SharedInputDataset& ds, double epsilon,
                  const OmegaWeights& omega, StructureMode mode,
                  AlphaMode alpha_mode, const EngineOptions& options = {});
SweepResult SweepSerial(const SharedInputDataset& ds, double epsilon,
                        const OmegaWeights& omega, StructureMode mode,
                        AlphaMode alpha_mode,
                        const EngineOptions& options = {});

// Rows = DMUs, columns = scores, footer = No./Mean/Min/Max.
struct ScoreTable {
  std::string title;
  std::string row_header = "DMU";
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<std::optional<double>>> cells;
  // Per-row status text ("Optimal", "Infeasible", or an error code).
  std::vector<std::string> row_status;
  std::vector<ColumnSummary> footer;
};

// Layout of the per-DMU result table: MPSS^<subsystem>... then MPSS^S.
ScoreTable ResultsTable(const std::vector<MpssResult>& results,
                        const std::vector<std::string>& subsystem_names,
                        double tolerance);

// Overall table (nullopt) or subsystem table across the alpha grid.
ScoreTable SweepTable(const SweepResult& sweep,
                      std::optional<std::size_t> subsystem);

}  // namespace mpss

#endif  // MPSS_ENGINE_H_
