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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenlog/syntax.hpp"
#include "tenlog/tensor_key.hpp"

namespace tenlog {

/// One ground literal of a clause-body instance.
struct BodyLiteral {
  enum class Kind { Tensor, Operator, Subgoal, Fact };
  Kind kind;
  TensorKey tensor;      // Tensor
  std::string op;        // Operator
  Atom atom;             // Subgoal, Fact

  std::string str() const;
  friend bool operator==(const BodyLiteral&, const BodyLiteral&) = default;
};

/// A ground clause body W whose logical literals are all true. Literals keep
/// source order, which fixes operator composition order and the order of
/// output indices.
struct Disjunct {
  std::vector<BodyLiteral> body;

  std::vector<TensorKey> tensor_refs() const;
  std::vector<std::string> operator_refs() const;
  std::vector<Atom> subgoal_refs() const;
  /// Plain ground facts folded into this body; they contribute a factor of one.
  std::size_t fact_count() const;

  std::string str() const;
  friend bool operator==(const Disjunct&, const Disjunct&) = default;
};

/// H <=> W1 v ... v WL
struct Node {
  Atom goal;
  std::vector<Disjunct> disjuncts;
};

struct Scc {
  std::vector<std::string> goals;
  bool cyclic = false;

  friend bool operator==(const Scc&, const Scc&) = default;
};

struct ExplanationGraph {
  /// Keyed by the goal's printed form.
  std::map<std::string, Node> nodes;
  std::string root;
  /// Dependencies first.
  std::vector<Scc> sccs;

  const Node& node(const std::string& key) const;
  const Node& root_node() const { return node(root); }
};

struct ExplainOptions {
  /// Upper bound on answer tables plus graph nodes per explanation.
  std::size_t node_budget = 1'000'000;
  /// Upper bound on nested subgoal calls.
  std::size_t depth_limit = 4000;
};

/// Tabled exhaustive proof search over one program. Answer tables survive
/// across goals, so explaining many goals against the same program shares
/// work. Not thread-safe.
class Explainer {
 public:
  explicit Explainer(const SourceProgram& program, ExplainOptions options = {});
  ~Explainer();
  Explainer(Explainer&&) noexcept;
  Explainer& operator=(Explainer&&) noexcept;

  /// Throws UnprovableGoal when the goal has no proof, ResourceError when the
  /// search exceeds its budget, SearchError for non-ground goals or
  /// non-ground tensor atoms.
  ExplanationGraph explain(const Atom& goal);

  /// All ground instances of `call` that hold in the least model.
  std::vector<Atom> answers(const Atom& call);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ExplanationGraph build_explanation_graph(const SourceProgram& p, const Atom& goal,
                                         const ExplainOptions& options = {});

/// Strongly connected components over goal-to-subgoal edges, dependencies
/// first. A component is cyclic when it has more than one goal or a self edge.
std::vector<Scc> condense_sccs(const ExplanationGraph& g);

nlohmann::json to_json(const ExplanationGraph& g);

}  // namespace tenlog
