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

#include "commands.h"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "mpss/engine.h"
#include "mpss/error.h"

namespace mpss::cli {
namespace {

struct Resolved {
  Dataset dataset;
  StructureMode mode = StructureMode::kDecoupled;
  AlphaMode alpha_mode = AlphaMode::kUniform;
  double epsilon = 0.1;
  double alpha = 0.5;
  OmegaWeights omega;
  EngineOptions options;
};

// Loads the dataset and merges flags over config values over defaults.
// Throws mpss::Error for anything that maps to a validation exit code.
Resolved Resolve(const RunConfig& run) {
  std::filesystem::path config_path =
      run.config ? *run.config
                 : std::filesystem::path(run.dataset).replace_extension(".cfg");
  const DatasetConfig config = LoadConfig(config_path);
  std::ifstream csv(run.dataset);
  if (!csv) throw Error(ErrorCode::kIo, "cannot open " + run.dataset.string());

  Resolved r{ParseDataset(csv, config)};
  const RunDefaults& d = config.defaults;
  r.mode = run.mode.value_or(d.mode.value_or(StructureMode::kDecoupled));
  r.alpha_mode =
      run.alpha_mode.value_or(d.alpha_mode.value_or(AlphaMode::kUniform));
  r.epsilon = run.epsilon.value_or(d.epsilon.value_or(0.1));
  r.alpha = run.alpha.value_or(0.5);
  const std::size_t h = NumSubsystems(r.dataset);
  r.omega.values = run.omega.value_or(
      d.omega.value_or(std::vector<double>(h, 1.0)));
  r.omega.Validate(h);
  r.options.class_tolerance = run.tolerance_class.value_or(
      d.tolerance_class.value_or(kDefaultClassTolerance));
  if (!(r.options.class_tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidDataset,
                "classification tolerance must be nonnegative");
  }
  r.options.jobs = run.jobs;
  MakeAlphaGrid(r.epsilon);
  return r;
}

std::string Extension(OutputFormat format) {
  return format == OutputFormat::kJson ? ".json" : ".csv";
}

bool IsSolverFailure(const MpssResult& r) {
  return r.error.find(ErrorCodeName(ErrorCode::kIterationLimit)) !=
             std::string::npos ||
         (r.error.empty() && r.status == LpStatus::kUnbounded);
}

// Writes `contents` to `path` when given, otherwise to `out`.
void Emit(const std::optional<std::filesystem::path>& path,
          const std::string& contents, std::ostream& out) {
  if (path) {
    WriteFile(*path, contents);
  } else {
    out << contents;
  }
}

template <typename Body>
int Guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const DatasetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::kIterationLimit) return kExitSolver;
    return kExitValidation;
  }
}

std::string Sanitize(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') {
      c = '_';
    }
  }
  return s;
}

}  // namespace

int CmdEvaluate(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    Resolved r = Resolve(run);
    std::vector<MpssResult> results;
    if (const auto* p = std::get_if<ParallelDataset>(&r.dataset)) {
      results = EvaluateAll(*p, r.omega, r.mode, r.options);
    } else {
      results = EvaluateAllShared(std::get<SharedInputDataset>(r.dataset),
                                  r.alpha, r.omega, r.mode, r.alpha_mode,
                                  r.options);
    }
    std::ostringstream body;
    WriteResults(results, SubsystemNames(r.dataset),
                 r.options.class_tolerance, run.format, body);
    Emit(run.out, body.str(), out);

    std::size_t mpss = 0;
    int code = kExitOk;
    for (const MpssResult& res : results) {
      if (res.ok() && res.overall_mpss) ++mpss;
      if (IsSolverFailure(res)) {
        err << "solver failure for DMU " << res.dmu_id << ": "
            << (res.error.empty() ? std::string(LpStatusName(res.status))
                                  : res.error)
            << '\n';
        code = kExitSolver;
      } else if (!res.error.empty()) {
        err << "DMU " << res.dmu_id << ": " << res.error << '\n';
      }
      if (run.verbosity > 0) {
        for (const auto& w : res.warnings) {
          err << "warning: DMU " << res.dmu_id << ": " << w << '\n';
        }
      }
    }
    std::ostream& summary = run.out ? out : err;
    summary << "No. MPSS: " << mpss << " / " << results.size() << " ("
            << StructureModeName(r.mode) << ")\n";
    return code;
  });
}

int CmdSweep(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    Resolved r = Resolve(run);
    const auto* ds = std::get_if<SharedInputDataset>(&r.dataset);
    if (ds == nullptr) {
      err << "error: sweep needs a shared-input dataset (structure = shared)\n";
      return static_cast<int>(kExitValidation);
    }
    const SweepResult sweep =
        Sweep(*ds, r.epsilon, r.omega, r.mode, r.alpha_mode, r.options);

    std::vector<std::pair<std::string, ScoreTable>> tables;
    tables.emplace_back("overall", SweepTable(sweep, std::nullopt));
    for (std::size_t t = 0; t < ds->num_subsystems(); ++t) {
      tables.emplace_back(Sanitize(ds->subsystem_names[t]), SweepTable(sweep, t));
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
      std::ostringstream body;
      WriteTable(tables[i].second, run.format, body);
      if (run.out) {
        std::filesystem::path prefix = *run.out;
        if (prefix.extension() == Extension(run.format)) {
          prefix.replace_extension();
        }
        WriteFile(prefix.string() + "." + tables[i].first + Extension(run.format),
                  body.str());
      } else {
        if (i > 0) out << '\n';
        if (run.format == OutputFormat::kCsv) {
          out << "# " << tables[i].second.title << '\n';
        }
        out << body.str();
      }
    }

    int code = kExitOk;
    for (const auto& column : sweep.cells) {
      for (const MpssResult& res : column) {
        if (IsSolverFailure(res)) {
          err << "solver failure for DMU " << res.dmu_id << " at alpha "
              << *res.alpha << '\n';
          code = kExitSolver;
        }
      }
    }
    std::ostream& summary = run.out ? out : err;
    summary << "No. MPSS per k:";
    for (std::size_t k = 0; k < sweep.grid.alphas.size(); ++k) {
      summary << ' ' << sweep.ColumnSummaryAt(k, std::nullopt).mpss_count;
    }
    summary << " of " << ds->num_dmus() << " (" << StructureModeName(r.mode)
            << ", " << AlphaModeName(r.alpha_mode) << ")\n";
    return code;
  });
}

int CmdDescribe(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    Resolved r = Resolve(run);
    std::ostringstream body;
    WriteStats(Describe(r.dataset), run.format, body);
    Emit(run.out, body.str(), out);
    return static_cast<int>(kExitOk);
  });
}

int CmdAudit(const RunConfig& run, std::ostream& out, std::ostream& err,
             const SolutionTamper& tamper) {
  return Guarded(err, [&] {
    Resolved r = Resolve(run);
    struct Job {
      std::string id;
      LinearProgram lp;
    };
    std::vector<Job> jobs;
    if (const auto* p = std::get_if<ParallelDataset>(&r.dataset)) {
      for (std::size_t o = 0; o < p->num_dmus(); ++o) {
        if (r.mode == StructureMode::kJoint) {
          jobs.push_back({p->dmu_ids[o] + "/joint",
                          BuildJointParallelMpss(*p, o, r.omega)});
        } else {
          for (std::size_t t = 0; t < p->num_subsystems(); ++t) {
            jobs.push_back({p->dmu_ids[o] + "/" + p->subsystem_names[t],
                            BuildSubsystemMpss(*p, t, o)});
          }
        }
      }
    } else {
      const auto& s = std::get<SharedInputDataset>(r.dataset);
      const AlphaGrid grid = MakeAlphaGrid(r.epsilon);
      for (std::size_t k = 0; k < grid.alphas.size(); ++k) {
        for (std::size_t o = 0; o < s.num_dmus(); ++o) {
          auto programs = BuildSharedMpss(s, o, grid.alphas[k], r.omega,
                                          r.mode, r.alpha_mode);
          const std::string base =
              "k=" + std::to_string(k + 1) + "/" + s.dmu_ids[o];
          for (std::size_t p = 0; p < programs.size(); ++p) {
            const std::string part = r.mode == StructureMode::kJoint
                                         ? std::string("joint")
                                         : s.subsystem_names[p];
            jobs.push_back({base + "/" + part, std::move(programs[p])});
          }
        }
      }
    }

    std::ostringstream report;
    std::ostringstream not_optimal;
    report << "lp,status,primal_violation,dual_violation,duality_gap,pass\n";
    std::size_t audited = 0, failed = 0, skipped = 0, solver_failures = 0;
    char buf[128];
    for (Job& job : jobs) {
      if (run.dump_lp_dir) {
        std::ostringstream dump;
        WriteLpDump(job.lp, dump);
        WriteFile(*run.dump_lp_dir / (Sanitize(job.id) + ".lp"), dump.str());
      }
      LpSolution sol;
      try {
        sol = Solve(job.lp, r.options.lp);
      } catch (const Error& e) {
        not_optimal << job.id << ',' << ErrorCodeName(e.code()) << '\n';
        ++solver_failures;
        continue;
      }
      if (!sol.optimal()) {
        not_optimal << job.id << ',' << LpStatusName(sol.status) << '\n';
        ++skipped;
        continue;
      }
      if (tamper) tamper(job.id, sol);
      ++audited;
      const CertificateReport cert = CheckCertificate(job.lp, sol, r.options.lp);
      if (!cert.pass) ++failed;
      std::snprintf(buf, sizeof(buf), ",%.3e,%.3e,%.3e,", cert.max_primal_violation,
                    cert.max_dual_violation, cert.duality_gap);
      report << job.id << ",Optimal" << buf << (cert.pass ? "yes" : "no")
             << '\n';
    }
    if (skipped + solver_failures > 0) {
      report << "\n# not optimal (no certificate)\nlp,status\n"
             << not_optimal.str();
    }
    Emit(run.out, report.str(), out);

    std::ostream& summary = run.out ? out : err;
    summary << "audited " << audited << " LPs: " << (audited - failed)
            << " passed, " << failed << " failed; " << skipped
            << " infeasible/unbounded";
    if (solver_failures) summary << ", " << solver_failures << " solver failures";
    summary << '\n';
    if (failed > 0) {
      err << "certificate failures:\n";
      std::istringstream lines(report.str());
      std::string line;
      while (std::getline(lines, line)) {
        if (line.size() > 3 && line.compare(line.size() - 3, 3, ",no") == 0) {
          err << "  " << line.substr(0, line.find(',')) << '\n';
        }
      }
      return static_cast<int>(kExitAudit);
    }
    return static_cast<int>(solver_failures ? kExitSolver : kExitOk);
  });
}

}  // namespace mpss::cli
