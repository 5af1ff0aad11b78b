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

#include "mpss/dea_models.h"

#include <cmath>
#include <string>

#include "mpss/error.h"

namespace mpss {
namespace {

std::string DmuLabel(const std::vector<std::string>& ids, std::size_t j) {
  return j < ids.size() ? ids[j] : std::to_string(j);
}

void CheckIndex(std::size_t o, std::size_t n) {
  if (o >= n) {
    throw Error(ErrorCode::kInvalidDataset,
                "DMU index " + std::to_string(o) + " out of range for " +
                    std::to_string(n) + " DMUs");
  }
}

// Collects nonpositive inputs, non-finite cells and all-zero output rows.
void CheckBlock(const Matrix& inputs, const Matrix& outputs,
                const std::vector<std::string>& input_labels,
                const std::vector<std::string>& output_labels,
                std::vector<Violation>& nonpositive,
                std::vector<Violation>& other) {
  for (Eigen::Index j = 0; j < inputs.rows(); ++j) {
    for (Eigen::Index i = 0; i < inputs.cols(); ++i) {
      const double v = inputs(j, i);
      if (!std::isfinite(v)) {
        other.push_back({static_cast<std::size_t>(j) + 1, input_labels[i],
                         "non-finite input"});
      } else if (v <= 0.0) {
        nonpositive.push_back({static_cast<std::size_t>(j) + 1, input_labels[i],
                               "input must be strictly positive, got " +
                                   std::to_string(v)});
      }
    }
  }
  for (Eigen::Index j = 0; j < outputs.rows(); ++j) {
    bool any_positive = false;
    for (Eigen::Index r = 0; r < outputs.cols(); ++r) {
      const double v = outputs(j, r);
      if (!std::isfinite(v) || v < 0.0) {
        other.push_back({static_cast<std::size_t>(j) + 1, output_labels[r],
                         "output must be finite and nonnegative"});
      } else if (v > 0.0) {
        any_positive = true;
      }
    }
    if (!any_positive) {
      std::string cols;
      for (const auto& label : output_labels) {
        cols += cols.empty() ? label : "," + label;
      }
      other.push_back({static_cast<std::size_t>(j) + 1, cols,
                       "every output is zero (degenerate DMU)"});
    }
  }
}

[[noreturn]] void ThrowViolations(std::vector<Violation> nonpositive,
                                  std::vector<Violation> other,
                                  ErrorCode other_code) {
  const ErrorCode code =
      nonpositive.empty() ? other_code : ErrorCode::kNonpositiveInput;
  nonpositive.insert(nonpositive.end(), other.begin(), other.end());
  throw DatasetError(code, std::move(nonpositive));
}

std::vector<std::string> Prefixed(const std::string& prefix,
                                  const std::vector<std::string>& names) {
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(prefix + name);
  return out;
}

// Positivity of the evaluated DMU in raw-matrix builders.
void CheckTarget(const Matrix& inputs, const Matrix& outputs, std::size_t o) {
  CheckIndex(o, static_cast<std::size_t>(inputs.rows()));
  if (outputs.rows() != inputs.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "input and output matrices disagree on the DMU count");
  }
  for (Eigen::Index i = 0; i < inputs.cols(); ++i) {
    if (!(inputs(o, i) > 0.0)) {
      throw Error(ErrorCode::kNonpositiveInput,
                  "DMU " + std::to_string(o) + " input " + std::to_string(i) +
                      " is not strictly positive");
    }
  }
  if (outputs.cols() == 0 || !(outputs.row(o).maxCoeff() > 0.0)) {
    throw Error(ErrorCode::kDegenerateDmu,
                "DMU " + std::to_string(o) +
                    " has no positive output; the expansion factor is vacuous");
  }
}

// Adds the envelopment rows of one block:
//   sum_j lambda_j X_ij <= theta * target_in_i
//   sum_j lambda_j Y_rj >= phi * Y_ro
//   sum_j lambda_j = 1
void AddEnvelopmentBlock(LinearProgram& lp, const Matrix& peer_inputs,
                         const Eigen::VectorXd& target_inputs,
                         const Matrix& outputs, std::size_t o,
                         std::size_t lambda_begin, std::size_t theta,
                         std::size_t phi) {
  const std::size_t num_vars = lp.num_variables();
  const auto n = static_cast<std::size_t>(peer_inputs.rows());
  for (Eigen::Index i = 0; i < peer_inputs.cols(); ++i) {
    std::vector<double> row(num_vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[lambda_begin + j] = peer_inputs(j, i);
    row[theta] = -target_inputs[i];
    lp.AddConstraint(std::move(row), Relation::kLessEqual, 0.0);
  }
  for (Eigen::Index r = 0; r < outputs.cols(); ++r) {
    std::vector<double> row(num_vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[lambda_begin + j] = outputs(j, r);
    row[phi] = -outputs(o, r);
    lp.AddConstraint(std::move(row), Relation::kGreaterEqual, 0.0);
  }
  std::vector<double> convexity(num_vars, 0.0);
  for (std::size_t j = 0; j < n; ++j) convexity[lambda_begin + j] = 1.0;
  lp.AddConstraint(std::move(convexity), Relation::kEqual, 1.0);
}

LinearProgram SingleBlockProgram(const Matrix& peer_inputs,
                                 const Eigen::VectorXd& target_inputs,
                                 const Matrix& outputs, std::size_t o,
                                 const std::vector<std::string>& ids,
                                 const std::string& weight_name) {
  const auto n = static_cast<std::size_t>(peer_inputs.rows());
  const VariableLayout layout = SingleBlockLayout(n);
  LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) {
    lp.AddVariable(weight_name + "[" + DmuLabel(ids, j) + "]");
  }
  lp.AddVariable("theta", -1.0);
  lp.AddVariable("phi", 1.0);
  AddEnvelopmentBlock(lp, peer_inputs, target_inputs, outputs, o,
                      layout.lambda(0, 0), layout.theta(0), layout.phi(0));
  return lp;
}

struct BlockData {
  Matrix peer_inputs;
  Eigen::VectorXd target_inputs;
  const Matrix* outputs;
  std::string name;
};

LinearProgram JointProgram(const std::vector<BlockData>& blocks,
                           const Matrix& system_inputs,
                           const Matrix& system_outputs, std::size_t o,
                           const OmegaWeights& omega,
                           const std::vector<std::string>& ids) {
  const std::size_t h = blocks.size();
  const auto n = static_cast<std::size_t>(system_inputs.rows());
  const VariableLayout layout = JointLayout(n, h);
  LinearProgram lp;
  for (std::size_t t = 0; t < h; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      lp.AddVariable("lambda^" + blocks[t].name + "[" + DmuLabel(ids, j) + "]");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp.AddVariable("mu[" + DmuLabel(ids, j) + "]");
  }
  for (std::size_t t = 0; t < h; ++t) lp.AddVariable("theta^" + blocks[t].name);
  for (std::size_t t = 0; t < h; ++t) lp.AddVariable("phi^" + blocks[t].name);
  lp.AddVariable("theta", -1.0);
  lp.AddVariable("phi", 1.0);

  for (std::size_t t = 0; t < h; ++t) {
    AddEnvelopmentBlock(lp, blocks[t].peer_inputs, blocks[t].target_inputs,
                        *blocks[t].outputs, o, layout.lambda(t, 0),
                        layout.theta(t), layout.phi(t));
  }
  AddEnvelopmentBlock(lp, system_inputs, system_inputs.row(o).transpose(),
                      system_outputs, o, layout.mu(0), layout.system_theta(),
                      layout.system_phi());

  std::vector<double> theta_link(lp.num_variables(), 0.0);
  std::vector<double> phi_link(lp.num_variables(), 0.0);
  theta_link[layout.system_theta()] = 1.0;
  phi_link[layout.system_phi()] = 1.0;
  for (std::size_t t = 0; t < h; ++t) {
    theta_link[layout.theta(t)] = -omega.values[t];
    phi_link[layout.phi(t)] = -omega.values[t];
  }
  lp.AddConstraint(std::move(theta_link), Relation::kEqual, 0.0);
  lp.AddConstraint(std::move(phi_link), Relation::kEqual, 0.0);
  return lp;
}

}  // namespace

std::string_view StructureModeName(StructureMode mode) {
  return mode == StructureMode::kJoint ? "joint" : "decoupled";
}

std::string_view AlphaModeName(AlphaMode mode) {
  return mode == AlphaMode::kUniform ? "uniform" : "target-only";
}

VariableLayout SingleBlockLayout(std::size_t n) { return {n, 1, false}; }

VariableLayout JointLayout(std::size_t n, std::size_t h) {
  return {n, h, true};
}

Matrix ParallelDataset::AggregateInputs() const {
  Matrix sum = Matrix::Zero(num_dmus(), input_names.size());
  for (const Matrix& x : inputs) sum += x;
  return sum;
}

Matrix ParallelDataset::AggregateOutputs() const {
  Matrix sum = Matrix::Zero(num_dmus(), output_names.size());
  for (const Matrix& y : outputs) sum += y;
  return sum;
}

void ParallelDataset::Validate() const {
  const std::size_t n = num_dmus();
  const std::size_t h = num_subsystems();
  if (h == 0) {
    throw Error(ErrorCode::kInvalidDataset, "dataset has no subsystems");
  }
  if (inputs.size() != h || outputs.size() != h) {
    throw Error(ErrorCode::kInvalidDataset,
                "need one input and one output matrix per subsystem");
  }
  for (std::size_t t = 0; t < h; ++t) {
    if (static_cast<std::size_t>(inputs[t].rows()) != n ||
        static_cast<std::size_t>(inputs[t].cols()) != input_names.size() ||
        static_cast<std::size_t>(outputs[t].rows()) != n ||
        static_cast<std::size_t>(outputs[t].cols()) != output_names.size()) {
      throw Error(ErrorCode::kInvalidDataset,
                  "subsystem " + subsystem_names[t] +
                      " matrices do not match the declared shape");
    }
  }
  if (input_names.empty() || output_names.empty()) {
    throw Error(ErrorCode::kInvalidDataset,
                "need at least one input and one output");
  }
  std::vector<Violation> nonpositive, other;
  for (std::size_t t = 0; t < h; ++t) {
    const std::string prefix = subsystem_names[t] + ".";
    CheckBlock(inputs[t], outputs[t], Prefixed(prefix, input_names),
               Prefixed(prefix, output_names), nonpositive, other);
  }
  if (!nonpositive.empty() || !other.empty()) {
    ThrowViolations(std::move(nonpositive), std::move(other),
                    ErrorCode::kInvalidDataset);
  }
}

Matrix SharedInputDataset::SystemOutputs() const {
  const auto n = static_cast<Eigen::Index>(num_dmus());
  if (aggregation == OutputAggregation::kSum) {
    Matrix sum = Matrix::Zero(n, outputs.empty() ? 0 : outputs[0].cols());
    for (const Matrix& y : outputs) sum += y;
    return sum;
  }
  Eigen::Index cols = 0;
  for (const Matrix& y : outputs) cols += y.cols();
  Matrix all(n, cols);
  Eigen::Index at = 0;
  for (const Matrix& y : outputs) {
    all.middleCols(at, y.cols()) = y;
    at += y.cols();
  }
  return all;
}

void SharedInputDataset::Validate() const {
  const std::size_t n = num_dmus();
  const std::size_t h = num_subsystems();
  if (h == 0) {
    throw Error(ErrorCode::kInvalidDataset, "dataset has no subsystems");
  }
  if (outputs.size() != h || output_names.size() != h) {
    throw Error(ErrorCode::kInvalidDataset,
                "need one output matrix per subsystem");
  }
  if (static_cast<std::size_t>(inputs.rows()) != n ||
      static_cast<std::size_t>(inputs.cols()) != input_names.size() ||
      input_names.empty()) {
    throw Error(ErrorCode::kInvalidDataset,
                "shared input matrix does not match the declared shape");
  }
  for (std::size_t t = 0; t < h; ++t) {
    if (static_cast<std::size_t>(outputs[t].rows()) != n ||
        static_cast<std::size_t>(outputs[t].cols()) != output_names[t].size() ||
        output_names[t].empty()) {
      throw Error(ErrorCode::kInvalidDataset,
                  "subsystem " + subsystem_names[t] +
                      " output matrix does not match the declared shape");
    }
    if (aggregation == OutputAggregation::kSum &&
        outputs[t].cols() != outputs[0].cols()) {
      throw Error(ErrorCode::kInvalidDataset,
                  "output aggregation 'sum' needs the same number of outputs "
                  "in every subsystem");
    }
  }
  std::vector<Violation> nonpositive, other;
  const Matrix no_outputs = Matrix::Ones(inputs.rows(), 1);
  CheckBlock(inputs, no_outputs, input_names, {"-"}, nonpositive, other);
  for (std::size_t t = 0; t < h; ++t) {
    CheckBlock(Matrix(inputs.rows(), 0), outputs[t], {},
               Prefixed(subsystem_names[t] + ".", output_names[t]),
               nonpositive, other);
  }
  if (!nonpositive.empty() || !other.empty()) {
    ThrowViolations(std::move(nonpositive), std::move(other),
                    ErrorCode::kInvalidDataset);
  }
}

void OmegaWeights::Validate(std::size_t h) const {
  if (values.size() != h) {
    throw Error(ErrorCode::kInvalidDataset,
                "expected " + std::to_string(h) + " omega weights, got " +
                    std::to_string(values.size()));
  }
  for (double w : values) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidDataset,
                  "omega weights must be finite and strictly positive");
    }
  }
}

AlphaGrid MakeAlphaGrid(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.5) {
    throw Error(ErrorCode::kEpsilonNotUnitFraction,
                "epsilon must lie in (0, 0.5], got " + std::to_string(epsilon));
  }
  const double inverse = 1.0 / epsilon;
  const double parts = std::round(inverse);
  if (std::abs(inverse - parts) > 1e-9) {
    throw Error(ErrorCode::kEpsilonNotUnitFraction,
                "1/epsilon must be an integer, got " + std::to_string(inverse));
  }
  AlphaGrid grid;
  grid.epsilon = epsilon;
  const auto k_max = static_cast<int>(parts) - 1;
  for (int k = 1; k <= k_max; ++k) grid.alphas.push_back(k * epsilon);
  return grid;
}

LinearProgram BuildSubsystemMpss(const ParallelDataset& ds, std::size_t t,
                                 std::size_t o) {
  ds.Validate();
  CheckIndex(o, ds.num_dmus());
  if (t >= ds.num_subsystems()) {
    throw Error(ErrorCode::kInvalidDataset,
                "subsystem index " + std::to_string(t) + " out of range");
  }
  CheckTarget(ds.inputs[t], ds.outputs[t], o);
  return SingleBlockProgram(ds.inputs[t], ds.inputs[t].row(o).transpose(),
                            ds.outputs[t], o, ds.dmu_ids,
                            "lambda^" + ds.subsystem_names[t]);
}

LinearProgram BuildJointParallelMpss(const ParallelDataset& ds, std::size_t o,
                                     const OmegaWeights& omega) {
  ds.Validate();
  CheckIndex(o, ds.num_dmus());
  omega.Validate(ds.num_subsystems());
  std::vector<BlockData> blocks;
  for (std::size_t t = 0; t < ds.num_subsystems(); ++t) {
    CheckTarget(ds.inputs[t], ds.outputs[t], o);
    blocks.push_back({ds.inputs[t], ds.inputs[t].row(o).transpose(),
                      &ds.outputs[t], ds.subsystem_names[t]});
  }
  return JointProgram(blocks, ds.AggregateInputs(), ds.AggregateOutputs(), o,
                      omega, ds.dmu_ids);
}

LinearProgram BuildBlackboxMpss(const Matrix& inputs, const Matrix& outputs,
                                std::size_t o) {
  CheckTarget(inputs, outputs, o);
  return SingleBlockProgram(inputs, inputs.row(o).transpose(), outputs, o, {},
                            "mu");
}

LinearProgram BuildCcr(const Matrix& inputs, const Matrix& outputs,
                       std::size_t o) {
  CheckTarget(inputs, outputs, o);
  const auto n = static_cast<std::size_t>(inputs.rows());
  LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) {
    lp.AddVariable("lambda[" + std::to_string(j) + "]");
  }
  const std::size_t theta = lp.AddVariable("theta", -1.0);
  for (Eigen::Index i = 0; i < inputs.cols(); ++i) {
    std::vector<double> row(lp.num_variables(), 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = inputs(j, i);
    row[theta] = -inputs(o, i);
    lp.AddConstraint(std::move(row), Relation::kLessEqual, 0.0);
  }
  for (Eigen::Index r = 0; r < outputs.cols(); ++r) {
    std::vector<double> row(lp.num_variables(), 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = outputs(j, r);
    lp.AddConstraint(std::move(row), Relation::kGreaterEqual, outputs(o, r));
  }
  return lp;
}

std::pair<Matrix, Matrix> SplitSharedInputs(const Matrix& inputs,
                                            double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "alpha must lie strictly inside (0, 1), got " +
                    std::to_string(alpha));
  }
  Matrix first = alpha * inputs;
  // Second share as the remainder so that first + second == inputs exactly.
  Matrix second = inputs - first;
  return {std::move(first), std::move(second)};
}

std::vector<LinearProgram> BuildSharedMpss(const SharedInputDataset& ds,
                                           std::size_t o, double alpha,
                                           const OmegaWeights& omega,
                                           StructureMode structure,
                                           AlphaMode alpha_mode) {
  ds.Validate();
  CheckIndex(o, ds.num_dmus());
  if (ds.num_subsystems() != 2) {
    throw Error(ErrorCode::kInvalidDataset,
                "shared-input split needs exactly two subsystems, got " +
                    std::to_string(ds.num_subsystems()));
  }
  omega.Validate(ds.num_subsystems());
  auto [first, second] = SplitSharedInputs(ds.inputs, alpha);
  const Matrix* shares[2] = {&first, &second};

  std::vector<BlockData> blocks;
  for (std::size_t t = 0; t < 2; ++t) {
    const Matrix& share = *shares[t];
    CheckTarget(share, ds.outputs[t], o);
    BlockData block;
    block.peer_inputs =
        alpha_mode == AlphaMode::kUniform ? share : ds.inputs;
    block.target_inputs = share.row(o).transpose();
    block.outputs = &ds.outputs[t];
    block.name = ds.subsystem_names[t];
    blocks.push_back(std::move(block));
  }

  std::vector<LinearProgram> programs;
  if (structure == StructureMode::kDecoupled) {
    for (const BlockData& block : blocks) {
      programs.push_back(SingleBlockProgram(
          block.peer_inputs, block.target_inputs, *block.outputs, o,
          ds.dmu_ids, "lambda^" + block.name));
    }
  } else {
    programs.push_back(JointProgram(blocks, ds.inputs, ds.SystemOutputs(), o,
                                    omega, ds.dmu_ids));
  }
  return programs;
}

}  // namespace mpss
