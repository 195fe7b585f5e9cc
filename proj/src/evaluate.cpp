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

#include "tenlog/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "tenlog/error.hpp"

namespace tenlog {

const DenseTensor& EvalTrace::value(const std::string& goal) const {
  auto it = values.find(goal);
  if (it == values.end()) throw Error("no value for goal " + goal);
  return it->second;
}

std::size_t EvalTrace::total_iterations() const {
  std::size_t n = 0;
  for (const auto& [k, v] : iterations) n += v;
  return n;
}

namespace {

const DenseTensor kOne = DenseTensor::scalar(1.0);

std::vector<const DenseTensor*> operand_values(const EquationTerm& term, const ParamStore& params,
                                               const std::map<std::string, DenseTensor>& values) {
  std::vector<const DenseTensor*> ops;
  for (const auto& op : term.operands) {
    switch (op.kind) {
      case OperandRef::Kind::Param: ops.push_back(&params.at(op.tensor)); break;
      case OperandRef::Kind::Goal: {
        auto it = values.find(op.goal);
        if (it == values.end()) throw Error("subgoal " + op.goal + " evaluated out of order");
        ops.push_back(&it->second);
        break;
      }
      case OperandRef::Kind::One: ops.push_back(&kOne); break;
    }
  }
  return ops;
}

DenseTensor evaluate_goal(const std::string& goal, const EquationSet& eqs, const ParamStore& params,
                          const std::map<std::string, DenseTensor>& values, const OperatorRegistry& registry,
                          Execution exec, std::vector<TermRecord>& records) {
  const TensorEquation& eq = eqs.equation(goal);
  DenseTensor sum(eqs.signature(goal).dims);
  records.clear();
  for (const auto& term : eq.terms) {
    TermRecord rec;
    rec.stages.push_back(einsum(term.einsum, operand_values(term, params, values), exec));
    for (auto it = term.operators.rbegin(); it != term.operators.rend(); ++it) {
      rec.stages.push_back(registry.at(*it).forward(rec.stages.back()));
    }
    sum += rec.stages.back();
    records.push_back(std::move(rec));
  }
  if (!sum.all_finite()) throw NumericError("non-finite value produced by goal " + goal);
  return sum;
}

}  // namespace

EvalTrace forward(const EquationSet& eqs, const ParamStore& params, const ForwardOptions& options,
                  const OperatorRegistry& registry) {
  EvalTrace trace;
  trace.equations = &eqs;
  trace.params = &params;
  trace.registry = &registry;
  trace.acyclic = eqs.acyclic();

  for (const auto& group : eqs.groups) {
    if (!group.cyclic) {
      const auto& goal = group.goals.front();
      trace.values[goal] =
          evaluate_goal(goal, eqs, params, trace.values, registry, options.exec, trace.terms[goal]);
      continue;
    }
    // Jacobi iteration from zeros.
    for (const auto& goal : group.goals) trace.values[goal] = DenseTensor(eqs.signature(goal).dims);
    std::size_t iter = 0;
    double residual = 0.0;
    while (true) {
      if (iter == options.max_iterations) {
        throw ConvergenceError("fixpoint for " + group.goals.front() + " did not converge in " +
                                   std::to_string(options.max_iterations) + " iterations (last residual " +
                                   std::to_string(residual) + ")",
                               residual);
      }
      std::map<std::string, DenseTensor> next;
      for (const auto& goal : group.goals) {
        next[goal] = evaluate_goal(goal, eqs, params, trace.values, registry, options.exec, trace.terms[goal]);
      }
      residual = 0.0;
      for (auto& [goal, v] : next) {
        const DenseTensor& old = trace.values.at(goal);
        for (std::size_t k = 0; k < v.size(); ++k) residual = std::max(residual, std::abs(v[k] - old[k]));
        trace.values[goal] = std::move(v);
      }
      ++iter;
      if (options.on_iterate) {
        std::map<std::string, DenseTensor> snapshot;
        for (const auto& goal : group.goals) snapshot.emplace(goal, trace.values.at(goal));
        options.on_iterate(iter, residual, snapshot);
      }
      if (residual <= options.tolerance) break;
    }
    trace.iterations[group.goals.front()] = iter;
    trace.residual = std::max(trace.residual, residual);
  }
  return trace;
}

namespace {

// Gradient of sum(g * einsum(spec, ops)) with respect to operand m.
DenseTensor einsum_operand_grad(const EinsumSpec& spec, const std::vector<const DenseTensor*>& ops,
                                const DenseTensor& g, std::size_t m, Execution exec) {
  const auto& target = spec.inputs[m];
  std::vector<std::string> unique;
  std::map<std::string, std::size_t> sizes;
  for (std::size_t a = 0; a < target.size(); ++a) {
    if (std::find(unique.begin(), unique.end(), target[a]) == unique.end()) unique.push_back(target[a]);
    sizes.emplace(target[a], ops[m]->shape()[a]);
  }
  EinsumSpec gs;
  std::vector<const DenseTensor*> gops;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k == m) continue;
    gs.inputs.push_back(spec.inputs[k]);
    gops.push_back(ops[k]);
  }
  gs.inputs.push_back(spec.output);
  gops.push_back(&g);
  gs.output = unique;
  DenseTensor compact = einsum(gs, gops, sizes, exec);
  if (unique.size() == target.size()) return compact;

  // Repeated labels: scatter back onto the diagonal.
  DenseTensor full(ops[m]->shape());
  const auto& shape = ops[m]->shape();
  std::vector<std::size_t> pos(unique.size());
  for (std::size_t a = 0; a < target.size(); ++a) {
    pos[static_cast<std::size_t>(std::find(unique.begin(), unique.end(), target[a]) - unique.begin())] = a;
  }
  std::vector<std::size_t> ustrides(unique.size(), 1);
  for (std::size_t u = unique.size(); u-- > 1;) ustrides[u - 1] = ustrides[u] * shape[pos[u]];
  std::vector<std::size_t> fstrides(shape.size(), 1);
  for (std::size_t a = shape.size(); a-- > 1;) fstrides[a - 1] = fstrides[a] * shape[a];
  for (std::size_t c = 0; c < compact.size(); ++c) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < target.size(); ++a) {
      const std::size_t u =
          static_cast<std::size_t>(std::find(unique.begin(), unique.end(), target[a]) - unique.begin());
      flat += (c / ustrides[u]) % shape[pos[u]] * fstrides[a];
    }
    full[flat] = compact[c];
  }
  return full;
}

void accumulate(std::map<std::string, DenseTensor>& into, const std::string& key, const DenseTensor& g) {
  auto it = into.find(key);
  if (it == into.end()) {
    into.emplace(key, g);
  } else {
    it->second += g;
  }
}

}  // namespace

std::map<TensorKey, DenseTensor> backward(const EvalTrace& trace, const std::map<std::string, DenseTensor>& loss_grad,
                                          Execution exec) {
  if (!trace.equations || !trace.params || !trace.registry) throw Error("backward needs a completed forward trace");
  const EquationSet& eqs = *trace.equations;
  const ParamStore& params = *trace.params;
  if (!trace.acyclic) throw Error("differentiation through fixpoints unsupported");

  std::map<std::string, DenseTensor> goal_grads;
  for (const auto& [goal, g] : loss_grad) {
    if (!eqs.equations.count(goal)) throw Error("loss gradient for unknown goal " + goal);
    if (g.shape() != eqs.signature(goal).dims) {
      throw ShapeError("loss gradient for " + goal + " has shape " + shape_str(g.shape()));
    }
    accumulate(goal_grads, goal, g);
  }
  std::map<TensorKey, DenseTensor> out;
  for (const auto& k : param_keys(eqs)) {
    if (params.trainable(k)) out.emplace(k, DenseTensor(params.at(k).shape()));
  }

  const auto order = eqs.evaluation_order();
  for (auto goal_it = order.rbegin(); goal_it != order.rend(); ++goal_it) {
    auto git = goal_grads.find(*goal_it);
    if (git == goal_grads.end()) continue;
    const DenseTensor gq = git->second;
    const TensorEquation& eq = eqs.equation(*goal_it);
    const auto& records = trace.terms.at(*goal_it);
    for (std::size_t t = 0; t < eq.terms.size(); ++t) {
      const EquationTerm& term = eq.terms[t];
      const auto& stages = records[t].stages;
      // Operators were applied innermost first; undo outermost first.
      DenseTensor g = gq;
      const std::size_t n_ops = term.operators.size();
      for (std::size_t k = 0; k < n_ops; ++k) {
        const std::size_t out_stage = n_ops - k;
        g = trace.registry->at(term.operators[k]).backward(stages[out_stage - 1], stages[out_stage], g);
      }
      const auto ops = operand_values(term, params, trace.values);
      for (std::size_t m = 0; m < term.operands.size(); ++m) {
        const OperandRef& op = term.operands[m];
        if (op.kind == OperandRef::Kind::One) continue;
        if (op.kind == OperandRef::Kind::Param && !params.trainable(op.tensor)) continue;
        DenseTensor gm = einsum_operand_grad(term.einsum, ops, g, m, exec);
        if (op.kind == OperandRef::Kind::Param) {
          out.at(op.tensor) += gm;
        } else {
          accumulate(goal_grads, op.goal, gm);
        }
      }
    }
  }
  return out;
}

}  // namespace tenlog
