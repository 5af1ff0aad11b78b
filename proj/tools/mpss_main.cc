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

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using mpss::cli::RunConfig;

void AddCommonFlags(CLI::App* cmd, RunConfig& run) {
  cmd->add_option("--dataset", run.dataset, "Dataset CSV file")->required();
  cmd->add_option("--config", run.config,
                  "Sidecar config (default: dataset path with .cfg)");
  cmd->add_option("--mode", run.mode, "Structure mode (default decoupled)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, mpss::StructureMode>{
              {"joint", mpss::StructureMode::kJoint},
              {"decoupled", mpss::StructureMode::kDecoupled}}))
      ->option_text("decoupled|joint");
  cmd->add_option("--alpha-mode", run.alpha_mode,
                  "Shared-input split mode (default uniform)")
      ->transform(CLI::CheckedTransformer(std::map<std::string, mpss::AlphaMode>{
          {"uniform", mpss::AlphaMode::kUniform},
          {"target-only", mpss::AlphaMode::kTargetOnly}}))
      ->option_text("uniform|target-only");
  cmd->add_option("--epsilon", run.epsilon, "Alpha grid spacing (default 0.1)");
  cmd->add_option("--alpha", run.alpha,
                  "Fixed split for evaluate on shared data (default 0.5)");
  cmd->add_option("--omega", run.omega,
                  "Subsystem weights, comma separated (default all 1)")
      ->delimiter(',');
  cmd->add_option("--tolerance-class", run.tolerance_class,
                  "MPSS classification tolerance (default 1e-6)");
  cmd->add_option("--out", run.out, "Output file (sweep: path prefix)");
  cmd->add_option("--format", run.format, "csv or json (default csv)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, mpss::OutputFormat>{
              {"csv", mpss::OutputFormat::kCsv},
              {"json", mpss::OutputFormat::kJson}}))
      ->option_text("csv|json");
  cmd->add_option("--jobs", run.jobs, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("-v,--verbose", run.verbosity, "Print warnings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Most productive scale size for parallel DEA networks"};
  app.require_subcommand(1);
  RunConfig run;

  auto* evaluate = app.add_subcommand("evaluate", "Score every DMU");
  AddCommonFlags(evaluate, run);
  auto* sweep = app.add_subcommand(
      "sweep", "Shared-input alpha grid: overall and per-subsystem tables");
  AddCommonFlags(sweep, run);
  auto* describe = app.add_subcommand("describe", "Descriptive statistics");
  AddCommonFlags(describe, run);
  auto* audit =
      app.add_subcommand("audit", "Re-solve and check every LP certificate");
  AddCommonFlags(audit, run);
  audit->add_option("--dump-lp", run.dump_lp_dir,
                    "Write each LP as text into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mpss::cli::kExitValidation;
  }

  if (evaluate->parsed()) return mpss::cli::CmdEvaluate(run, std::cout, std::cerr);
  if (sweep->parsed()) return mpss::cli::CmdSweep(run, std::cout, std::cerr);
  if (describe->parsed()) return mpss::cli::CmdDescribe(run, std::cout, std::cerr);
  return mpss::cli::CmdAudit(run, std::cout, std::cerr);
}
