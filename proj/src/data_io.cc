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

#include "mpss/data_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mpss/error.h"

namespace mpss {
namespace {

using Json = nlohmann::ordered_json;

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> Split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = line.find(sep, start);
    out.push_back(Trim(line.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::optional<double> ParseDouble(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
  return value;
}

double ParseConfigNumber(const std::string& key, const std::string& text) {
  const auto v = ParseDouble(text);
  if (!v) {
    throw Error(ErrorCode::kSchemaMismatch,
                "config key '" + key + "' expects a number, got '" + text + "'");
  }
  return *v;
}

std::string Exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Role {
  enum Kind { kId, kSharedInput, kInput, kOutput } kind;
  std::size_t subsystem = 0;  // 0-based; for kInput / kOutput
  std::string name;
};

Role ParseRole(const std::string& column, const std::string& text,
               std::size_t h) {
  if (text == "id") return {Role::kId, 0, {}};
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "column '" + column + "' has unknown role '" + text + "'");
  }
  const std::string head = text.substr(0, colon);
  const std::string name = text.substr(colon + 1);
  if (head == "input") return {Role::kSharedInput, 0, name};
  if ((head[0] == 'x' || head[0] == 'y') && head.size() > 1) {
    std::size_t t = 0;
    const char* begin = head.data() + 1;
    const char* end = head.data() + head.size();
    auto [ptr, ec] = std::from_chars(begin, end, t);
    if (ec == std::errc() && ptr == end && t >= 1 && t <= h) {
      return {head[0] == 'x' ? Role::kInput : Role::kOutput, t - 1, name};
    }
  }
  throw Error(ErrorCode::kSchemaMismatch,
              "column '" + column + "' has unknown role '" + text +
                  "' (subsystem index must be 1.." + std::to_string(h) + ")");
}

struct ColumnPlan {
  std::size_t id_column = 0;
  // (csv column index, name) in header order.
  std::vector<std::pair<std::size_t, std::string>> shared;
  std::vector<std::vector<std::pair<std::size_t, std::string>>> inputs;
  std::vector<std::vector<std::pair<std::size_t, std::string>>> outputs;
};

// Runs `validate` and rewrites violation columns from model labels
// ("Sub.name") to the CSV headers the user wrote.
template <typename Validate>
void ValidateWithHeaders(Validate&& validate,
                         const std::map<std::string, std::string>& headers) {
  try {
    validate();
  } catch (const DatasetError& e) {
    std::vector<Violation> renamed = e.violations();
    for (Violation& v : renamed) {
      std::string out;
      std::stringstream labels(v.column);
      for (std::string label; std::getline(labels, label, ',');) {
        const auto it = headers.find(label);
        if (!out.empty()) out += ',';
        out += it == headers.end() ? label : it->second;
      }
      v.column = std::move(out);
    }
    throw DatasetError(e.code(), std::move(renamed));
  }
}

std::vector<std::string> NamesOf(
    const std::vector<std::pair<std::size_t, std::string>>& cols) {
  std::vector<std::string> names;
  for (const auto& c : cols) names.push_back(c.second);
  return names;
}

ColumnPlan PlanColumns(const std::vector<std::string>& header,
                       const DatasetConfig& config) {
  const std::size_t h = config.subsystems.size();
  if (h == 0) {
    throw Error(ErrorCode::kSchemaMismatch, "config declares no subsystems");
  }
  std::map<std::string, std::string> roles;
  for (const auto& [column, role] : config.columns) {
    if (!roles.emplace(column, role).second) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "column '" + column + "' has more than one role");
    }
  }
  std::vector<std::string> problems;
  for (const auto& [column, role] : config.columns) {
    if (std::find(header.begin(), header.end(), column) == header.end()) {
      problems.push_back("missing column '" + column + "'");
    }
  }
  for (const auto& column : header) {
    if (!roles.count(column)) {
      problems.push_back("column '" + column + "' has no role");
    }
    if (std::count(header.begin(), header.end(), column) > 1) {
      problems.push_back("duplicate header '" + column + "'");
    }
  }
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::kSchemaMismatch, msg);
  }

  ColumnPlan plan;
  plan.inputs.resize(h);
  plan.outputs.resize(h);
  int ids = 0;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const Role role = ParseRole(header[c], roles[header[c]], h);
    switch (role.kind) {
      case Role::kId:
        plan.id_column = c;
        ++ids;
        break;
      case Role::kSharedInput:
        plan.shared.emplace_back(c, role.name);
        break;
      case Role::kInput:
        plan.inputs[role.subsystem].emplace_back(c, role.name);
        break;
      case Role::kOutput:
        plan.outputs[role.subsystem].emplace_back(c, role.name);
        break;
    }
  }
  if (ids != 1) {
    throw Error(ErrorCode::kSchemaMismatch,
                "exactly one column must have role 'id'");
  }
  for (std::size_t t = 0; t < h; ++t) {
    if (plan.outputs[t].empty()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "subsystem " + config.subsystems[t] + " has no outputs");
    }
  }
  if (config.structure == Structure::kShared) {
    if (plan.shared.empty()) {
      throw Error(ErrorCode::kSchemaMismatch, "shared dataset has no inputs");
    }
    for (const auto& cols : plan.inputs) {
      if (!cols.empty()) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "shared datasets take inputs as 'input:<name>', not x<t>");
      }
    }
  } else {
    for (std::size_t t = 0; t < h; ++t) {
      if (plan.inputs[t].empty()) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "subsystem " + config.subsystems[t] + " has no inputs");
      }
      if (NamesOf(plan.inputs[t]) != NamesOf(plan.inputs[0]) ||
          NamesOf(plan.outputs[t]) != NamesOf(plan.outputs[0])) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "every subsystem must declare the same input and output "
                    "names in the same order");
      }
    }
    const auto names = NamesOf(plan.inputs[0]);
    for (const auto& [c, name] : plan.shared) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "system total '" + header[c] +
                        "' does not match any subsystem input name");
      }
    }
  }
  return plan;
}

Matrix Gather(const std::vector<std::vector<double>>& cells,
              const std::vector<std::pair<std::size_t, std::string>>& cols) {
  Matrix m(static_cast<Eigen::Index>(cells.size()),
           static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cells.size(); ++j) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m(j, c) = cells[j][cols[c].first];
    }
  }
  return m;
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

Json OptionalNumber(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? Json(*v) : Json(nullptr);
}

Json FooterJson(const ScoreTable& table) {
  Json footer = Json::array();
  for (std::size_t c = 0; c < table.footer.size(); ++c) {
    const ColumnSummary& s = table.footer[c];
    Json entry;
    entry["column"] = table.columns[c];
    if (s.available) {
      entry["No."] = s.mpss_count;
      entry["Mean"] = s.mean;
      entry["Min"] = s.min;
      entry["Max"] = s.max;
    } else {
      entry["No."] = "n/a";
    }
    footer.push_back(std::move(entry));
  }
  return footer;
}

Json TableJson(const ScoreTable& table) {
  Json j;
  j["title"] = table.title;
  j["columns"] = table.columns;
  Json rows = Json::array();
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    Json row;
    row[table.row_header] = table.row_labels[r];
    Json scores;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      scores[table.columns[c]] = OptionalNumber(table.cells[r][c]);
    }
    row["scores"] = std::move(scores);
    row["status"] = table.row_status[r];
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["footer"] = FooterJson(table);
  return j;
}

}  // namespace

DatasetConfig ParseConfig(std::istream& in) {
  DatasetConfig config;
  std::string line;
  bool has_structure = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "config line without '=': " + line);
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key == "structure") {
      if (value == "parallel") {
        config.structure = Structure::kParallel;
      } else if (value == "shared") {
        config.structure = Structure::kShared;
      } else {
        throw Error(ErrorCode::kSchemaMismatch, "unknown structure " + value);
      }
      has_structure = true;
    } else if (key == "subsystems") {
      config.subsystems = Split(value, ',');
    } else if (key == "aggregation") {
      if (value == "sum") {
        config.aggregation = OutputAggregation::kSum;
      } else if (value == "concat") {
        config.aggregation = OutputAggregation::kConcat;
      } else {
        throw Error(ErrorCode::kSchemaMismatch, "unknown aggregation " + value);
      }
    } else if (key.rfind("column.", 0) == 0) {
      config.columns.emplace_back(key.substr(7), value);
    } else if (key == "mode") {
      if (value != "joint" && value != "decoupled") {
        throw Error(ErrorCode::kSchemaMismatch, "unknown mode " + value);
      }
      config.defaults.mode =
          value == "joint" ? StructureMode::kJoint : StructureMode::kDecoupled;
    } else if (key == "alpha_mode") {
      if (value != "uniform" && value != "target-only") {
        throw Error(ErrorCode::kSchemaMismatch, "unknown alpha_mode " + value);
      }
      config.defaults.alpha_mode =
          value == "uniform" ? AlphaMode::kUniform : AlphaMode::kTargetOnly;
    } else if (key == "epsilon") {
      config.defaults.epsilon = ParseConfigNumber(key, value);
    } else if (key == "tolerance_class") {
      config.defaults.tolerance_class = ParseConfigNumber(key, value);
    } else if (key == "omega") {
      std::vector<double> omega;
      for (const auto& part : Split(value, ',')) {
        omega.push_back(ParseConfigNumber(key, part));
      }
      config.defaults.omega = std::move(omega);
    } else {
      throw Error(ErrorCode::kSchemaMismatch, "unknown config key " + key);
    }
  }
  if (!has_structure) {
    throw Error(ErrorCode::kSchemaMismatch, "config must set 'structure'");
  }
  return config;
}

DatasetConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ParseConfig(in);
}

Dataset ParseDataset(std::istream& csv, const DatasetConfig& config) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(csv, line)) {
    if (!Trim(line).empty()) {
      header = Split(line, ',');
      break;
    }
  }
  if (header.empty()) {
    throw Error(ErrorCode::kSchemaMismatch, "dataset file has no header row");
  }
  const ColumnPlan plan = PlanColumns(header, config);

  std::vector<std::string> ids;
  std::vector<std::vector<double>> cells;
  std::vector<Violation> bad_cells;
  while (std::getline(csv, line)) {
    if (Trim(line).empty()) continue;
    const std::size_t row = cells.size() + 1;
    const auto fields = Split(line, ',');
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "row " + std::to_string(row) + " has " +
                      std::to_string(fields.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    std::vector<double> values(fields.size(), 0.0);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == plan.id_column) continue;
      const auto v = ParseDouble(fields[c]);
      if (!v || !std::isfinite(*v)) {
        bad_cells.push_back({row, header[c],
                             "not a finite number: '" + fields[c] + "'"});
      } else {
        values[c] = *v;
      }
    }
    ids.push_back(fields[plan.id_column]);
    cells.push_back(std::move(values));
  }
  if (!bad_cells.empty()) {
    throw DatasetError(ErrorCode::kInvalidDataset, std::move(bad_cells));
  }

  const std::size_t h = config.subsystems.size();
  if (config.structure == Structure::kShared) {
    SharedInputDataset ds;
    ds.id_label = header[plan.id_column];
    ds.dmu_ids = ids;
    ds.subsystem_names = config.subsystems;
    ds.aggregation = config.aggregation;
    ds.input_names = NamesOf(plan.shared);
    ds.inputs = Gather(cells, plan.shared);
    for (std::size_t t = 0; t < h; ++t) {
      ds.output_names.push_back(NamesOf(plan.outputs[t]));
      ds.outputs.push_back(Gather(cells, plan.outputs[t]));
    }
    std::map<std::string, std::string> labels;
    for (const auto& [c, name] : plan.shared) labels[name] = header[c];
    for (std::size_t t = 0; t < h; ++t) {
      for (const auto& [c, name] : plan.outputs[t]) {
        labels[config.subsystems[t] + "." + name] = header[c];
      }
    }
    ValidateWithHeaders([&] { ds.Validate(); }, labels);
    return ds;
  }

  ParallelDataset ds;
  ds.id_label = header[plan.id_column];
  ds.dmu_ids = ids;
  ds.subsystem_names = config.subsystems;
  ds.input_names = NamesOf(plan.inputs[0]);
  ds.output_names = NamesOf(plan.outputs[0]);
  for (std::size_t t = 0; t < h; ++t) {
    ds.inputs.push_back(Gather(cells, plan.inputs[t]));
    ds.outputs.push_back(Gather(cells, plan.outputs[t]));
  }
  std::map<std::string, std::string> labels;
  for (std::size_t t = 0; t < h; ++t) {
    for (const auto* block : {&plan.inputs[t], &plan.outputs[t]}) {
      for (const auto& [c, name] : *block) {
        labels[config.subsystems[t] + "." + name] = header[c];
      }
    }
  }
  ValidateWithHeaders([&] { ds.Validate(); }, labels);

  // Declared system totals must equal the subsystem sums.
  const Matrix aggregate = ds.AggregateInputs();
  std::vector<Violation> mismatches;
  for (const auto& [c, name] : plan.shared) {
    const auto i = std::find(ds.input_names.begin(), ds.input_names.end(),
                             name) - ds.input_names.begin();
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const double total = cells[j][c];
      const double sum = aggregate(j, i);
      if (std::abs(total - sum) > 1e-9 * std::max(1.0, std::abs(total))) {
        mismatches.push_back({j + 1, header[c],
                              "system total " + Exact(total) +
                                  " differs from subsystem sum " + Exact(sum)});
      }
    }
  }
  if (!mismatches.empty()) {
    throw DatasetError(ErrorCode::kAggregateMismatch, std::move(mismatches));
  }
  return ds;
}

Dataset LoadDataset(const std::filesystem::path& csv_path,
                    const std::filesystem::path& config_path) {
  const DatasetConfig config = LoadConfig(config_path);
  std::ifstream in = OpenInput(csv_path);
  return ParseDataset(in, config);
}

void WriteDataset(const Dataset& dataset, std::ostream& csv,
                  std::ostream& config) {
  struct Column {
    std::string header;
    std::string role;
    const Matrix* matrix;
    Eigen::Index col;
  };
  std::vector<Column> columns;
  std::string id_label;
  const std::vector<std::string>* ids = nullptr;
  const std::vector<std::string>* subsystems = nullptr;

  if (const auto* p = std::get_if<ParallelDataset>(&dataset)) {
    config << "structure = parallel\n";
    id_label = p->id_label;
    ids = &p->dmu_ids;
    subsystems = &p->subsystem_names;
    for (std::size_t t = 0; t < p->num_subsystems(); ++t) {
      const std::string tag = std::to_string(t + 1);
      for (std::size_t i = 0; i < p->input_names.size(); ++i) {
        columns.push_back({"x" + tag + "_" + p->input_names[i],
                           "x" + tag + ":" + p->input_names[i], &p->inputs[t],
                           static_cast<Eigen::Index>(i)});
      }
      for (std::size_t r = 0; r < p->output_names.size(); ++r) {
        columns.push_back({"y" + tag + "_" + p->output_names[r],
                           "y" + tag + ":" + p->output_names[r],
                           &p->outputs[t], static_cast<Eigen::Index>(r)});
      }
    }
  } else {
    const auto& s = std::get<SharedInputDataset>(dataset);
    config << "structure = shared\n";
    config << "aggregation = "
           << (s.aggregation == OutputAggregation::kSum ? "sum" : "concat")
           << '\n';
    id_label = s.id_label;
    ids = &s.dmu_ids;
    subsystems = &s.subsystem_names;
    for (std::size_t i = 0; i < s.input_names.size(); ++i) {
      columns.push_back({s.input_names[i], "input:" + s.input_names[i],
                         &s.inputs, static_cast<Eigen::Index>(i)});
    }
    for (std::size_t t = 0; t < s.num_subsystems(); ++t) {
      const std::string tag = std::to_string(t + 1);
      for (std::size_t r = 0; r < s.output_names[t].size(); ++r) {
        columns.push_back({"y" + tag + "_" + s.output_names[t][r],
                           "y" + tag + ":" + s.output_names[t][r],
                           &s.outputs[t], static_cast<Eigen::Index>(r)});
      }
    }
  }
  config << "subsystems = ";
  for (std::size_t t = 0; t < subsystems->size(); ++t) {
    config << (t ? ", " : "") << (*subsystems)[t];
  }
  config << "\ncolumn." << id_label << " = id\n";
  for (const Column& c : columns) {
    config << "column." << c.header << " = " << c.role << '\n';
  }

  csv << id_label;
  for (const Column& c : columns) csv << ',' << c.header;
  csv << '\n';
  for (std::size_t j = 0; j < ids->size(); ++j) {
    csv << (*ids)[j];
    for (const Column& c : columns) {
      csv << ',' << Exact((*c.matrix)(static_cast<Eigen::Index>(j), c.col));
    }
    csv << '\n';
  }
}

std::size_t NumSubsystems(const Dataset& ds) {
  return std::visit([](const auto& d) { return d.num_subsystems(); }, ds);
}

const std::vector<std::string>& SubsystemNames(const Dataset& ds) {
  return std::visit(
      [](const auto& d) -> const std::vector<std::string>& {
        return d.subsystem_names;
      },
      ds);
}

ColumnStats DescribeColumn(std::string name,
                           const std::vector<double>& values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidDataset,
                "cannot describe empty column " + name);
  }
  ColumnStats s;
  s.column = std::move(name);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  double sum = 0.0;
  for (double v : values) sum += v;
  const auto n = static_cast<double>(values.size());
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

DescriptiveStats Describe(const Dataset& dataset) {
  DescriptiveStats stats;
  auto add = [&stats](std::string name, const Matrix& m, Eigen::Index col) {
    std::vector<double> v(m.rows());
    for (Eigen::Index j = 0; j < m.rows(); ++j) v[j] = m(j, col);
    stats.columns.push_back(DescribeColumn(std::move(name), v));
  };
  if (const auto* p = std::get_if<ParallelDataset>(&dataset)) {
    stats.count = p->num_dmus();
    if (stats.count == 0) {
      throw Error(ErrorCode::kInvalidDataset, "cannot describe an empty dataset");
    }
    for (std::size_t t = 0; t < p->num_subsystems(); ++t) {
      const std::string prefix = p->subsystem_names[t] + ".";
      for (std::size_t i = 0; i < p->input_names.size(); ++i) {
        add(prefix + p->input_names[i], p->inputs[t], i);
      }
      for (std::size_t r = 0; r < p->output_names.size(); ++r) {
        add(prefix + p->output_names[r], p->outputs[t], r);
      }
    }
  } else {
    const auto& s = std::get<SharedInputDataset>(dataset);
    stats.count = s.num_dmus();
    if (stats.count == 0) {
      throw Error(ErrorCode::kInvalidDataset, "cannot describe an empty dataset");
    }
    for (std::size_t i = 0; i < s.input_names.size(); ++i) {
      add(s.input_names[i], s.inputs, i);
    }
    for (std::size_t t = 0; t < s.num_subsystems(); ++t) {
      for (std::size_t r = 0; r < s.output_names[t].size(); ++r) {
        add(s.subsystem_names[t] + "." + s.output_names[t][r], s.outputs[t], r);
      }
    }
  }
  return stats;
}

std::string FormatScore(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string out = buf;
  if (out == "-0.0000") out = "0.0000";
  return out;
}

void WriteTable(const ScoreTable& table, OutputFormat format,
                std::ostream& out) {
  if (format == OutputFormat::kJson) {
    out << TableJson(table).dump(2) << '\n';
    return;
  }
  out << table.row_header;
  for (const auto& c : table.columns) out << ',' << c;
  out << ",status\n";
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    out << table.row_labels[r];
    for (const auto& v : table.cells[r]) {
      out << ',';
      if (v && std::isfinite(*v)) out << FormatScore(*v);
    }
    out << ',' << table.row_status[r] << '\n';
  }
  if (table.footer.empty()) return;
  const char* labels[] = {"No.", "Mean", "Min", "Max"};
  for (int line = 0; line < 4; ++line) {
    out << labels[line];
    for (const ColumnSummary& s : table.footer) {
      out << ',';
      if (!s.available) {
        out << "n/a";
      } else if (line == 0) {
        out << s.mpss_count;
      } else {
        out << FormatScore(line == 1 ? s.mean : line == 2 ? s.min : s.max);
      }
    }
    out << ",\n";
  }
}

void WriteResults(const std::vector<MpssResult>& results,
                  const std::vector<std::string>& subsystem_names,
                  double tolerance, OutputFormat format, std::ostream& out) {
  const ScoreTable table = ResultsTable(results, subsystem_names, tolerance);
  if (format == OutputFormat::kCsv) {
    WriteTable(table, format, out);
    return;
  }
  Json j = TableJson(table);
  j["class_tolerance"] = tolerance;
  Json details = Json::array();
  for (const MpssResult& r : results) {
    Json d;
    d["dmu"] = r.dmu_id;
    d["mode"] = std::string(StructureModeName(r.mode));
    if (r.alpha) d["alpha"] = *r.alpha;
    d["status"] = std::string(LpStatusName(r.status));
    if (!r.error.empty()) d["error"] = r.error;
    if (r.ok()) {
      d["theta"] = r.theta;
      d["phi"] = r.phi;
      d["score"] = r.score;
      d["overall_mpss"] = r.overall_mpss;
      Json subs = Json::array();
      for (std::size_t t = 0; t < r.subsystems.size(); ++t) {
        const SubsystemScore& s = r.subsystems[t];
        subs.push_back({{"subsystem", subsystem_names.at(t)},
                        {"theta", s.theta},
                        {"phi", s.phi},
                        {"score", s.score},
                        {"mpss", s.mpss}});
      }
      d["subsystems"] = std::move(subs);
    }
    d["audited"] = r.audited();
    d["warnings"] = r.warnings;
    details.push_back(std::move(d));
  }
  j["details"] = std::move(details);
  out << j.dump(2) << '\n';
}

void WriteStats(const DescriptiveStats& stats, OutputFormat format,
                std::ostream& out) {
  if (format == OutputFormat::kJson) {
    Json j;
    j["count"] = stats.count;
    j["sd_convention"] = "sample (n-1)";
    Json cols = Json::array();
    for (const ColumnStats& c : stats.columns) {
      cols.push_back({{"column", c.column},
                      {"min", c.min},
                      {"max", c.max},
                      {"mean", c.mean},
                      {"sd", c.sd ? Json(*c.sd) : Json("n/a")}});
    }
    j["columns"] = std::move(cols);
    out << j.dump(2) << '\n';
    return;
  }
  out << "column,min,max,mean,sd_sample_n_minus_1\n";
  char buf[160];
  for (const ColumnStats& c : stats.columns) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g", c.min, c.max, c.mean);
    out << c.column << ',' << buf << ',';
    if (c.sd) {
      std::snprintf(buf, sizeof(buf), "%.10g", *c.sd);
      out << buf;
    } else {
      out << "n/a";
    }
    out << '\n';
  }
}

void WriteFile(const std::filesystem::path& path,
               const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace mpss
