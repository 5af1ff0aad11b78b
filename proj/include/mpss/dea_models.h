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

// Datasets and LP builders for most-productive-scale-size (MPSS) models of
// parallel networks.
//
// All MPSS builders maximize phi - theta over a variable-returns-to-scale
// envelope: theta contracts the evaluated DMU's inputs, phi expands its
// outputs. A score of zero means the DMU sits at MPSS.

#ifndef MPSS_DEA_MODELS_H_
#define MPSS_DEA_MODELS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mpss/lp.h"

namespace mpss {

// Rows are DMUs, columns are measures.
using Matrix = Eigen::MatrixXd;

// Classical parallel system: every subsystem has its own inputs and outputs
// and the system totals are their elementwise sums.
struct ParallelDataset {
  std::string id_label = "DMU";
  std::vector<std::string> dmu_ids;
  std::vector<std::string> subsystem_names;
  // Shared across subsystems so that the aggregate is well defined.
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  std::vector<Matrix> inputs;   // one n x m matrix per subsystem
  std::vector<Matrix> outputs;  // one n x s matrix per subsystem

  std::size_t num_dmus() const { return dmu_ids.size(); }
  std::size_t num_subsystems() const { return subsystem_names.size(); }

  Matrix AggregateInputs() const;
  Matrix AggregateOutputs() const;

  // Throws DatasetError listing every offending cell.
  void Validate() const;
};

enum class OutputAggregation { kSum, kConcat };

// System whose inputs are split between subsystems; only outputs are
// observed per subsystem.
struct SharedInputDataset {
  std::string id_label = "DMU";
  std::vector<std::string> dmu_ids;
  std::vector<std::string> subsystem_names;
  std::vector<std::string> input_names;
  std::vector<std::vector<std::string>> output_names;  // per subsystem
  Matrix inputs;                                       // n x m
  std::vector<Matrix> outputs;                         // n x s_t each
  OutputAggregation aggregation = OutputAggregation::kConcat;

  std::size_t num_dmus() const { return dmu_ids.size(); }
  std::size_t num_subsystems() const { return subsystem_names.size(); }

  // Concatenation of the subsystem output blocks, or their sum.
  Matrix SystemOutputs() const;

  void Validate() const;
};

struct OmegaWeights {
  std::vector<double> values;

  static OmegaWeights Uniform(std::size_t h) {
    return {std::vector<double>(h, 1.0)};
  }
  // Throws Error(kInvalidDataset) unless length == h and all entries > 0.
  void Validate(std::size_t h) const;
};

struct AlphaGrid {
  double epsilon = 0.1;
  std::vector<double> alphas;
};

// alpha_k = k * epsilon for k = 1 .. round(1/epsilon) - 1.
// Throws Error(kEpsilonNotUnitFraction) unless 0 < epsilon <= 0.5 and
// 1/epsilon is within 1e-9 of an integer.
AlphaGrid MakeAlphaGrid(double epsilon);

enum class StructureMode { kJoint, kDecoupled };
enum class AlphaMode { kUniform, kTargetOnly };

std::string_view StructureModeName(StructureMode mode);
std::string_view AlphaModeName(AlphaMode mode);

// Positional variable layout shared by every emitted LP:
//   [lambda^1 block ... lambda^h block, mu block,
//    theta^1..theta^h, phi^1..phi^h, theta, phi]
// Single-block programs (one subsystem, black box, CCR) use h = 1 and no
// system block, i.e. [lambda_1..lambda_n, theta, phi].
struct VariableLayout {
  std::size_t n = 0;
  std::size_t h = 1;
  bool has_system = false;

  std::size_t lambda(std::size_t t, std::size_t j) const { return t * n + j; }
  std::size_t mu(std::size_t j) const { return h * n + j; }
  std::size_t theta(std::size_t t) const { return Base() + t; }
  std::size_t phi(std::size_t t) const { return Base() + h + t; }
  std::size_t system_theta() const { return Base() + 2 * h; }
  std::size_t system_phi() const { return Base() + 2 * h + 1; }
  std::size_t num_variables() const {
    return Base() + 2 * h + (has_system ? 2 : 0);
  }

 private:
  std::size_t Base() const { return h * n + (has_system ? n : 0); }
};

VariableLayout SingleBlockLayout(std::size_t n);
VariableLayout JointLayout(std::size_t n, std::size_t h);

// Subsystem t of a parallel dataset on its own (one block of the
// relational model). Variables per SingleBlockLayout.
LinearProgram BuildSubsystemMpss(const ParallelDataset& ds, std::size_t t,
                                 std::size_t o);

// The full relational model: every subsystem block, the aggregate system
// block and the two linking equalities theta = sum w_t theta^t,
// phi = sum w_t phi^t. Variables per JointLayout.
LinearProgram BuildJointParallelMpss(const ParallelDataset& ds, std::size_t o,
                                     const OmegaWeights& omega);

// MPSS of the aggregate system as a single black box.
LinearProgram BuildBlackboxMpss(const Matrix& inputs, const Matrix& outputs,
                                std::size_t o);

// Input-oriented constant-returns envelopment. Variables
// [lambda_1..lambda_n, theta]; the objective is -theta, so theta* is the
// negated optimum.
LinearProgram BuildCcr(const Matrix& inputs, const Matrix& outputs,
                       std::size_t o);

// (alpha * X, (1 - alpha) * X). Throws Error(kAlphaOutOfRange) unless
// 0 < alpha < 1.
std::pair<Matrix, Matrix> SplitSharedInputs(const Matrix& inputs, double alpha);

// Shared-input model. Subsystem 1 receives the alpha share of the inputs and
// subsystem 2 the rest.
//   kUniform:    both sides of every subsystem input row are split.
//   kTargetOnly: only the evaluated DMU's right-hand side is split
//                (experimental reading, see README).
// kJoint returns one LP (JointLayout); kDecoupled returns one LP per
// subsystem (SingleBlockLayout). Requires exactly two subsystems.
std::vector<LinearProgram> BuildSharedMpss(const SharedInputDataset& ds,
                                           std::size_t o, double alpha,
                                           const OmegaWeights& omega,
                                           StructureMode structure,
                                           AlphaMode alpha_mode);

}  // namespace mpss

#endif  // MPSS_DEA_MODELS_H_
