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

// Subcommands of the `mpss` tool, kept out of main() so tests can drive them
// with in-memory streams.

#ifndef MPSS_TOOLS_COMMANDS_H_
#define MPSS_TOOLS_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpss/data_io.h"
#include "mpss/dea_models.h"
#include "mpss/lp.h"

namespace mpss::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitSolver = 3,
  kExitAudit = 4,
};

// Unset optionals fall back to the dataset config, then to the defaults
// (decoupled, uniform, epsilon 0.1, omega all ones, tolerance 1e-6).
struct RunConfig {
  std::filesystem::path dataset;
  // Defaults to the dataset path with extension ".cfg".
  std::optional<std::filesystem::path> config;
  std::optional<StructureMode> mode;
  std::optional<AlphaMode> alpha_mode;
  std::optional<double> epsilon;
  // Fixed split for `evaluate` on shared-input data (default 0.5).
  std::optional<double> alpha;
  std::optional<std::vector<double>> omega;
  std::optional<double> tolerance_class;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::kCsv;
  int jobs = 0;
  int verbosity = 0;
  // `audit` only: write every LP in the dump format into this directory.
  std::optional<std::filesystem::path> dump_lp_dir;
};

// Applied to each solution before its certificate is checked in `audit`.
using SolutionTamper = std::function<void(const std::string& lp_id, LpSolution&)>;

int CmdEvaluate(const RunConfig& run, std::ostream& out, std::ostream& err);
int CmdSweep(const RunConfig& run, std::ostream& out, std::ostream& err);
int CmdDescribe(const RunConfig& run, std::ostream& out, std::ostream& err);
int CmdAudit(const RunConfig& run, std::ostream& out, std::ostream& err,
             const SolutionTamper& tamper = {});

}  // namespace mpss::cli

#endif  // MPSS_TOOLS_COMMANDS_H_
