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

// Dataset files, descriptive statistics and result tables.
//
// A dataset is a comma-separated file with a header row plus a sidecar
// config of `key = value` lines ('#' starts a comment):
//
//   structure   = parallel | shared
//   subsystems  = I, II                 (order defines subsystem 1, 2, ...)
//   aggregation = concat | sum          (shared only; default concat)
//   column.<header> = <role>            (one line per CSV column)
//
// Roles: `id`, `input:<name>` (shared input; for parallel data an optional
// system total that must equal the subsystem sum), `x<t>:<name>` and
// `y<t>:<name>` (input / output <name> of subsystem t, 1-based).
//
// Optional run defaults, overridden by command-line flags:
//   mode, alpha_mode, epsilon, omega (comma list), tolerance_class.

#ifndef MPSS_DATA_IO_H_
#define MPSS_DATA_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpss/dea_models.h"
#include "mpss/engine.h"

namespace mpss {

using Dataset = std::variant<ParallelDataset, SharedInputDataset>;

enum class Structure { kParallel, kShared };

struct RunDefaults {
  std::optional<StructureMode> mode;
  std::optional<AlphaMode> alpha_mode;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> omega;
  std::optional<double> tolerance_class;
};

struct DatasetConfig {
  Structure structure = Structure::kParallel;
  std::vector<std::string> subsystems;
  OutputAggregation aggregation = OutputAggregation::kConcat;
  // (CSV header, role) in declaration order.
  std::vector<std::pair<std::string, std::string>> columns;
  RunDefaults defaults;
};

DatasetConfig ParseConfig(std::istream& in);
DatasetConfig LoadConfig(const std::filesystem::path& path);

// Throws DatasetError (NonpositiveInput, AggregateMismatch, ...) listing every
// offending cell, or Error(kSchemaMismatch) when header and roles disagree.
Dataset ParseDataset(std::istream& csv, const DatasetConfig& config);
Dataset LoadDataset(const std::filesystem::path& csv_path,
                    const std::filesystem::path& config_path);

// Emits a CSV/config pair that ParseDataset reads back to an equal dataset.
void WriteDataset(const Dataset& ds, std::ostream& csv, std::ostream& config);

std::size_t NumSubsystems(const Dataset& ds);
const std::vector<std::string>& SubsystemNames(const Dataset& ds);

struct ColumnStats {
  std::string column;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  // Sample standard deviation (divisor n - 1); empty when n == 1.
  std::optional<double> sd;
};

struct DescriptiveStats {
  std::size_t count = 0;
  std::vector<ColumnStats> columns;
};

ColumnStats DescribeColumn(std::string name, const std::vector<double>& values);
// Throws Error(kInvalidDataset) for an empty dataset.
DescriptiveStats Describe(const Dataset& ds);

enum class OutputFormat { kCsv, kJson };

// Four decimals, round-half-even on the binary value, no negative zero.
std::string FormatScore(double value);

void WriteTable(const ScoreTable& table, OutputFormat format,
                std::ostream& out);
// Table plus per-DMU details (theta, phi, statuses) in JSON.
void WriteResults(const std::vector<MpssResult>& results,
                  const std::vector<std::string>& subsystem_names,
                  double tolerance, OutputFormat format, std::ostream& out);
void WriteStats(const DescriptiveStats& stats, OutputFormat format,
                std::ostream& out);

// Opens `path` for writing or throws Error(kIo).
void WriteFile(const std::filesystem::path& path,
               const std::string& contents);

}  // namespace mpss

#endif  // MPSS_DATA_IO_H_
