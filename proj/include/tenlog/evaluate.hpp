//------------------------------------------------------------------------------
//
//   Copyright 2026 The tenlog Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tenlog/compile.hpp"
#include "tenlog/einsum.hpp"
#include "tenlog/operators.hpp"
#include "tenlog/params.hpp"

namespace tenlog {

struct ForwardOptions {
  /// Cyclic groups stop once the max-abs change between iterates is at most this.
  double tolerance = 1e-8;
  std::size_t max_iterations = 10'000;
  Execution exec = Execution::Parallel;
  /// Called after every fixpoint iteration with the group's iterate.
  std::function<void(std::size_t iteration, double residual, const std::map<std::string, DenseTensor>& values)>
      on_iterate;
};

struct TermRecord {
  /// stages[0] is the einsum result; stages[k] follows the k-th operator
  /// application, innermost first. The last stage is the term's value.
  std::vector<DenseTensor> stages;
};

struct EvalTrace {
  const EquationSet* equations = nullptr;
  const ParamStore* params = nullptr;
  const OperatorRegistry* registry = nullptr;
  std::map<std::string, DenseTensor> values;
  std::map<std::string, std::vector<TermRecord>> terms;
  /// Iterations used by each cyclic group, keyed by its first goal.
  std::map<std::string, std::size_t> iterations;
  double residual = 0.0;
  bool acyclic = true;

  const DenseTensor& value(const std::string& goal) const;
  std::size_t total_iterations() const;
};

/// Evaluates every goal in order. Throws NumericError naming the goal on
/// NaN/Inf and ConvergenceError when a cyclic group exceeds the cap. The
/// trace keeps pointers to `eqs`, `params` and `registry`.
EvalTrace forward(const EquationSet& eqs, const ParamStore& params, const ForwardOptions& options = {},
                  const OperatorRegistry& registry = builtin_operators());

/// Gradients of the loss with respect to every trainable parameter the
/// equations use, given the loss gradient at some goals. Only acyclic sets.
std::map<TensorKey, DenseTensor> backward(const EvalTrace& trace, const std::map<std::string, DenseTensor>& loss_grad,
                                          Execution exec = Execution::Parallel);

}  // namespace tenlog
