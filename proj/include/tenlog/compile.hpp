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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenlog/einsum.hpp"
#include "tenlog/explain.hpp"
#include "tenlog/operators.hpp"
#include "tenlog/tensor_key.hpp"

namespace tenlog {

struct IndexSignature {
  std::vector<std::string> indices;
  std::vector<std::size_t> dims;

  bool is_scalar() const noexcept { return indices.empty(); }
  /// e.g. "(o:50)" or "()"
  std::string str() const;
  friend bool operator==(const IndexSignature&, const IndexSignature&) = default;
};

struct OperandRef {
  enum class Kind { Param, Goal, One };
  Kind kind = Kind::One;
  TensorKey tensor;  // Param
  std::string goal;  // Goal

  static OperandRef param(TensorKey key) { return {Kind::Param, std::move(key), {}}; }
  static OperandRef subgoal(std::string goal) { return {Kind::Goal, {}, std::move(goal)}; }
  static OperandRef one() { return {}; }
  std::string str() const;
  friend bool operator==(const OperandRef&, const OperandRef&) = default;
};

struct EquationTerm {
  EinsumSpec einsum;
  std::vector<OperandRef> operands;
  /// Source order; the first operator is applied last.
  std::vector<std::string> operators;

  friend bool operator==(const EquationTerm&, const EquationTerm&) = default;
};

struct TensorEquation {
  Atom goal;
  std::vector<EquationTerm> terms;

  friend bool operator==(const TensorEquation&, const TensorEquation&) = default;
};

struct EvalGroup {
  std::vector<std::string> goals;
  bool cyclic = false;

  friend bool operator==(const EvalGroup&, const EvalGroup&) = default;
};

struct EquationSet {
  /// Keyed by the goal's printed form.
  std::map<std::string, TensorEquation> equations;
  /// Dependencies first.
  std::vector<EvalGroup> groups;
  std::map<std::string, IndexSignature> signatures;
  std::map<std::string, std::size_t> ranges;
  std::string root;

  std::vector<std::string> evaluation_order() const;
  bool acyclic() const;
  const TensorEquation& equation(const std::string& goal) const;
  const IndexSignature& signature(const std::string& goal) const;

  friend bool operator==(const EquationSet&, const EquationSet&) = default;
};

/// Output indices are those occurring exactly once across the operands, in
/// first-occurrence order. Throws CompileError when a subgoal has no
/// signature yet.
EinsumSpec infer_signature(const Disjunct& d, const std::map<std::string, IndexSignature>& sigs);

EquationSet compile(const ExplanationGraph& g, const std::map<std::string, std::size_t>& ranges,
                    const OperatorRegistry& registry = builtin_operators());

struct ShapeReport {
  std::size_t equations = 0;
  std::size_t terms = 0;
  std::size_t operands = 0;
};

/// Throws ShapeError naming goal, term, operand and axis on the first
/// mismatch. Parameter shapes are taken from `ranges`.
ShapeReport check_shapes(const EquationSet& eqs, const std::map<std::string, std::size_t>& ranges,
                         const OperatorRegistry& registry = builtin_operators());

/// Every parameter key referenced by the equations.
std::set<TensorKey> param_keys(const EquationSet& eqs);

/// Single-letter names for index symbols in first-use order over the
/// evaluation order.
std::map<std::string, char> index_letters(const EquationSet& eqs);

nlohmann::json to_json(const EquationSet& eqs);
EquationSet equations_from_json(const nlohmann::json& j);

}  // namespace tenlog
