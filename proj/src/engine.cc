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
#include <cstdio>
#include <exception>
#include <utility>

#include <omp.h>

#include "mpss/error.h"

namespace mpss {
namespace {

struct SolvedProgram {
  LpSolution solution;
  LpRecord record;
};

SolvedProgram SolveAndAudit(const LinearProgram& lp, std::string label,
                            const EngineOptions& options) {
  SolvedProgram out;
  out.solution = Solve(lp, options.lp);
  out.record.label = std::move(label);
  out.record.status = out.solution.status;
  out.record.iterations = out.solution.iterations;
  if (out.solution.optimal()) {
    out.record.certificate = CheckCertificate(lp, out.solution, options.lp);
    out.record.audited = out.record.certificate.pass;
  }
  return out;
}

// Fills the scores of `result` from solved programs. Decoupled mode expects
// one single-block program per subsystem; joint mode a single program.
void Decode(const std::vector<LinearProgram>& programs,
            const std::vector<std::string>& subsystem_names,
            const OmegaWeights& omega, const EngineOptions& options,
            MpssResult& result) {
  const std::size_t h = subsystem_names.size();
  result.subsystems.assign(h, SubsystemScore{});
  std::vector<SolvedProgram> solved;
  for (std::size_t p = 0; p < programs.size(); ++p) {
    const std::string label = result.mode == StructureMode::kJoint
                                  ? std::string("joint")
                                  : "subsystem " + subsystem_names[p];
    solved.push_back(SolveAndAudit(programs[p], label, options));
    result.lps.push_back(solved.back().record);
  }
  for (const SolvedProgram& s : solved) {
    if (!s.solution.optimal()) {
      result.status = s.solution.status;
      return;
    }
    if (!s.record.audited) {
      result.warnings.push_back("unaudited: certificate failed for " +
                                s.record.label);
    }
  }
  result.status = LpStatus::kOptimal;
  const double tol = options.class_tolerance;

  if (result.mode == StructureMode::kDecoupled) {
    result.theta = result.phi = 0.0;
    for (std::size_t t = 0; t < h; ++t) {
      const auto& x = solved[t].solution.primal;
      const VariableLayout layout = SingleBlockLayout(x.size() - 2);
      SubsystemScore& s = result.subsystems[t];
      s.theta = x[layout.theta(0)];
      s.phi = x[layout.phi(0)];
      s.score = s.phi - s.theta;
      result.theta += omega.values[t] * s.theta;
      result.phi += omega.values[t] * s.phi;
    }
    result.score = 0.0;
    for (std::size_t t = 0; t < h; ++t) {
      result.score += omega.values[t] * result.subsystems[t].score;
    }
  } else {
    const auto& x = solved[0].solution.primal;
    const std::size_t n = (x.size() - 2 * h - 2) / (h + 1);
    const VariableLayout layout = JointLayout(n, h);
    for (std::size_t t = 0; t < h; ++t) {
      SubsystemScore& s = result.subsystems[t];
      s.theta = x[layout.theta(t)];
      s.phi = x[layout.phi(t)];
      s.score = s.phi - s.theta;
      if (s.score < -tol) {
        result.warnings.push_back("negative joint-mode score in subsystem " +
                                  subsystem_names[t]);
      }
    }
    result.theta = x[layout.system_theta()];
    result.phi = x[layout.system_phi()];
    result.score = result.phi - result.theta;
  }
  for (SubsystemScore& s : result.subsystems) s.mpss = s.score <= tol;
  result.overall_mpss = result.score <= tol;
}

template <typename BuildPrograms>
MpssResult EvaluateWith(BuildPrograms&& build, std::size_t o,
                        const std::vector<std::string>& dmu_ids,
                        const std::vector<std::string>& subsystem_names,
                        const OmegaWeights& omega, StructureMode mode,
                        const EngineOptions& options) {
  MpssResult result;
  result.dmu_index = o;
  result.dmu_id = o < dmu_ids.size() ? dmu_ids[o] : std::to_string(o);
  result.mode = mode;
  try {
    Decode(build(), subsystem_names, omega, options, result);
  } catch (const std::exception& e) {
    result.error = e.what();
    result.subsystems.assign(subsystem_names.size(), SubsystemScore{});
  }
  return result;
}

template <typename Fn>
void ParallelFor(std::size_t count, int jobs, Fn&& fn) {
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  const auto total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < total; ++i) {
    fn(static_cast<std::size_t>(i));
  }
}

std::string StatusText(const MpssResult& r) {
  if (!r.error.empty()) {
    const auto colon = r.error.find(':');
    return colon == std::string::npos ? r.error : r.error.substr(0, colon);
  }
  return std::string(LpStatusName(r.status));
}

}  // namespace

bool MpssResult::audited() const {
  return !lps.empty() && std::all_of(lps.begin(), lps.end(),
                                     [](const LpRecord& r) { return r.audited; });
}

MpssResult Evaluate(const ParallelDataset& ds, std::size_t o,
                    const OmegaWeights& omega, StructureMode mode,
                    const EngineOptions& options) {
  auto build = [&] {
    std::vector<LinearProgram> programs;
    if (mode == StructureMode::kJoint) {
      programs.push_back(BuildJointParallelMpss(ds, o, omega));
    } else {
      omega.Validate(ds.num_subsystems());
      for (std::size_t t = 0; t < ds.num_subsystems(); ++t) {
        programs.push_back(BuildSubsystemMpss(ds, t, o));
      }
    }
    return programs;
  };
  return EvaluateWith(build, o, ds.dmu_ids, ds.subsystem_names, omega, mode,
                      options);
}

MpssResult EvaluateShared(const SharedInputDataset& ds, std::size_t o,
                          double alpha, const OmegaWeights& omega,
                          StructureMode mode, AlphaMode alpha_mode,
                          const EngineOptions& options) {
  auto build = [&] {
    return BuildSharedMpss(ds, o, alpha, omega, mode, alpha_mode);
  };
  MpssResult result = EvaluateWith(build, o, ds.dmu_ids, ds.subsystem_names,
                                   omega, mode, options);
  result.alpha = alpha;
  return result;
}

Classification Classify(const MpssResult& result, double tolerance) {
  if (!result.ok()) {
    throw Error(ErrorCode::kUnclassifiable,
                "DMU " + result.dmu_id + " has no optimal solution");
  }
  Classification c;
  c.overall = result.score <= tolerance;
  for (const SubsystemScore& s : result.subsystems) {
    c.subsystems.push_back(s.score <= tolerance);
  }
  return c;
}

DecompositionCheck VerifyDecomposition(const MpssResult& result,
                                       const OmegaWeights& omega,
                                       double tolerance) {
  DecompositionCheck check;
  double weighted = 0.0;
  for (std::size_t t = 0; t < result.subsystems.size(); ++t) {
    weighted += omega.values.at(t) * result.subsystems[t].score;
  }
  check.residual = std::abs(result.score - weighted);
  check.pass = check.residual <= tolerance;
  return check;
}

std::vector<MpssResult> EvaluateAll(const ParallelDataset& ds,
                                    const OmegaWeights& omega,
                                    StructureMode mode,
                                    const EngineOptions& options) {
  std::vector<MpssResult> results(ds.num_dmus());
  ParallelFor(results.size(), options.jobs, [&](std::size_t o) {
    results[o] = Evaluate(ds, o, omega, mode, options);
  });
  return results;
}

std::vector<MpssResult> EvaluateAllSerial(const ParallelDataset& ds,
                                          const OmegaWeights& omega,
                                          StructureMode mode,
                                          const EngineOptions& options) {
  std::vector<MpssResult> results;
  results.reserve(ds.num_dmus());
  for (std::size_t o = 0; o < ds.num_dmus(); ++o) {
    results.push_back(Evaluate(ds, o, omega, mode, options));
  }
  return results;
}

std::vector<MpssResult> EvaluateAllShared(const SharedInputDataset& ds,
                                          double alpha,
                                          const OmegaWeights& omega,
                                          StructureMode mode,
                                          AlphaMode alpha_mode,
                                          const EngineOptions& options) {
  std::vector<MpssResult> results(ds.num_dmus());
  ParallelFor(results.size(), options.jobs, [&](std::size_t o) {
    results[o] =
        EvaluateShared(ds, o, alpha, omega, mode, alpha_mode, options);
  });
  return results;
}

ColumnSummary Summarize(const std::vector<std::optional<double>>& scores,
                        double tolerance) {
  ColumnSummary s;
  double sum = 0.0;
  for (const auto& v : scores) {
    if (!v) continue;
    if (s.evaluated == 0) {
      s.min = s.max = *v;
    } else {
      s.min = std::min(s.min, *v);
      s.max = std::max(s.max, *v);
    }
    ++s.evaluated;
    sum += *v;
    if (*v <= tolerance) ++s.mpss_count;
  }
  s.available = s.evaluated > 0;
  if (s.available) s.mean = sum / static_cast<double>(s.evaluated);
  return s;
}

std::optional<double> ScoreOf(const MpssResult& result,
                              std::optional<std::size_t> subsystem) {
  if (!result.ok()) return std::nullopt;
  if (!subsystem) return result.score;
  return result.subsystems.at(*subsystem).score;
}

ColumnSummary SweepResult::ColumnSummaryAt(
    std::size_t k, std::optional<std::size_t> subsystem) const {
  std::vector<std::optional<double>> column;
  for (const MpssResult& r : cells.at(k)) column.push_back(ScoreOf(r, subsystem));
  return Summarize(column, class_tolerance);
}

namespace {

SweepResult MakeSweepShell(const SharedInputDataset& ds, double epsilon,
                           StructureMode mode, AlphaMode alpha_mode,
                           const EngineOptions& options) {
  SweepResult sweep;
  sweep.grid = MakeAlphaGrid(epsilon);
  sweep.mode = mode;
  sweep.alpha_mode = alpha_mode;
  sweep.subsystem_names = ds.subsystem_names;
  sweep.dmu_ids = ds.dmu_ids;
  sweep.class_tolerance = options.class_tolerance;
  sweep.cells.assign(sweep.grid.alphas.size(),
                     std::vector<MpssResult>(ds.num_dmus()));
  return sweep;
}

}  // namespace

SweepResult Sweep(const SharedInputDataset& ds, double epsilon,
                  const OmegaWeights& omega, StructureMode mode,
                  AlphaMode alpha_mode, const EngineOptions& options) {
  SweepResult sweep = MakeSweepShell(ds, epsilon, mode, alpha_mode, options);
  const std::size_t n = ds.num_dmus();
  ParallelFor(sweep.grid.alphas.size() * n, options.jobs, [&](std::size_t i) {
    const std::size_t k = i / n;
    const std::size_t o = i % n;
    sweep.cells[k][o] = EvaluateShared(ds, o, sweep.grid.alphas[k], omega,
                                       mode, alpha_mode, options);
  });
  return sweep;
}

SweepResult SweepSerial(const SharedInputDataset& ds, double epsilon,
                        const OmegaWeights& omega, StructureMode mode,
                        AlphaMode alpha_mode, const EngineOptions& options) {
  SweepResult sweep = MakeSweepShell(ds, epsilon, mode, alpha_mode, options);
  for (std::size_t k = 0; k < sweep.grid.alphas.size(); ++k) {
    for (std::size_t o = 0; o < ds.num_dmus(); ++o) {
      sweep.cells[k][o] = EvaluateShared(ds, o, sweep.grid.alphas[k], omega,
                                         mode, alpha_mode, options);
    }
  }
  return sweep;
}

ScoreTable ResultsTable(const std::vector<MpssResult>& results,
                        const std::vector<std::string>& subsystem_names,
                        double tolerance) {
  ScoreTable table;
  table.title = "MPSS scores";
  for (const auto& name : subsystem_names) table.columns.push_back("MPSS^" + name);
  table.columns.push_back("MPSS^S");
  const std::size_t h = subsystem_names.size();
  for (const MpssResult& r : results) {
    table.row_labels.push_back(r.dmu_id);
    std::vector<std::optional<double>> row;
    for (std::size_t t = 0; t < h; ++t) row.push_back(ScoreOf(r, t));
    row.push_back(ScoreOf(r, std::nullopt));
    table.cells.push_back(std::move(row));
    table.row_status.push_back(StatusText(r));
  }
  if (!results.empty()) {
    for (std::size_t c = 0; c <= h; ++c) {
      std::vector<std::optional<double>> column;
      for (const auto& row : table.cells) column.push_back(row[c]);
      table.footer.push_back(Summarize(column, tolerance));
    }
  }
  return table;
}

ScoreTable SweepTable(const SweepResult& sweep,
                      std::optional<std::size_t> subsystem) {
  ScoreTable table;
  table.title = subsystem ? sweep.subsystem_names.at(*subsystem) + " MPSS"
                          : std::string("Overall MPSS");
  char eps[32];
  std::snprintf(eps, sizeof(eps), "%g", sweep.grid.epsilon);
  table.title += std::string(", epsilon=") + eps + ", " +
                 std::string(StructureModeName(sweep.mode)) + ", " +
                 std::string(AlphaModeName(sweep.alpha_mode));
  for (std::size_t k = 0; k < sweep.grid.alphas.size(); ++k) {
    table.columns.push_back("k=" + std::to_string(k + 1));
  }
  const std::size_t n = sweep.dmu_ids.size();
  for (std::size_t o = 0; o < n; ++o) {
    table.row_labels.push_back(sweep.dmu_ids[o]);
    std::vector<std::optional<double>> row;
    std::string status = "Optimal";
    for (std::size_t k = 0; k < sweep.cells.size(); ++k) {
      const MpssResult& r = sweep.cells[k][o];
      row.push_back(ScoreOf(r, subsystem));
      if (!r.ok() && status == "Optimal") status = StatusText(r);
    }
    table.cells.push_back(std::move(row));
    table.row_status.push_back(status);
  }
  if (n > 0) {
    for (std::size_t k = 0; k < sweep.cells.size(); ++k) {
      table.footer.push_back(sweep.ColumnSummaryAt(k, subsystem));
    }
  }
  return table;
}

}  // namespace mpss
