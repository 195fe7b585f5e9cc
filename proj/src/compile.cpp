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

#include "tenlog/compile.hpp"

#include <algorithm>

#include "tenlog/error.hpp"
#include "tenlog/syntax.hpp"

namespace tenlog {

std::string IndexSignature::str() const {
  std::string out = "(";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out += ',';
    out += indices[k] + ":" + std::to_string(dims[k]);
  }
  return out + ")";
}

std::string OperandRef::str() const {
  switch (kind) {
    case Kind::Param: return tensor.str();
    case Kind::Goal: return goal;
    case Kind::One: return "1";
  }
  return {};
}

std::vector<std::string> EquationSet::evaluation_order() const {
  std::vector<std::string> out;
  for (const auto& g : groups) out.insert(out.end(), g.goals.begin(), g.goals.end());
  return out;
}

bool EquationSet::acyclic() const {
  return std::none_of(groups.begin(), groups.end(), [](const EvalGroup& g) { return g.cyclic; });
}

const TensorEquation& EquationSet::equation(const std::string& goal) const {
  auto it = equations.find(goal);
  if (it == equations.end()) throw CompileError("no equation for goal " + goal);
  return it->second;
}

const IndexSignature& EquationSet::signature(const std::string& goal) const {
  auto it = signatures.find(goal);
  if (it == signatures.end()) throw CompileError("no signature for goal " + goal);
  return it->second;
}

namespace {

std::string labels_str(const std::vector<std::string>& ls) {
  std::string out = "(";
  for (std::size_t k = 0; k < ls.size(); ++k) {
    if (k) out += ',';
    out += ls[k];
  }
  return out + ")";
}

bool resolvable(const Disjunct& d, const std::map<std::string, IndexSignature>& sigs) {
  for (const auto& s : d.subgoal_refs()) {
    if (!sigs.count(s.str())) return false;
  }
  return true;
}

IndexSignature make_signature(const std::vector<std::string>& indices, const std::map<std::string, std::size_t>& ranges,
                              const std::string& goal) {
  IndexSignature sig{indices, {}};
  for (const auto& i : indices) {
    auto it = ranges.find(i);
    if (it == ranges.end()) throw CompileError("index " + i + " in the signature of " + goal + " has no range");
    sig.dims.push_back(it->second);
  }
  return sig;
}

EquationTerm lower(const Disjunct& d, const std::map<std::string, IndexSignature>& sigs, const IndexSignature& goal_sig,
                   const std::string& goal, std::size_t position, const OperatorRegistry& registry) {
  EquationTerm term;
  term.einsum = infer_signature(d, sigs);
  for (const auto& lit : d.body) {
    switch (lit.kind) {
      case BodyLiteral::Kind::Tensor: term.operands.push_back(OperandRef::param(lit.tensor)); break;
      case BodyLiteral::Kind::Subgoal: term.operands.push_back(OperandRef::subgoal(lit.atom.str())); break;
      case BodyLiteral::Kind::Fact: term.operands.push_back(OperandRef::one()); break;
      case BodyLiteral::Kind::Operator: term.operators.push_back(lit.op); break;
    }
  }
  for (const auto& op : term.operators) registry.at(op);
  if (!term.operators.empty() && term.operands.empty()) {
    throw CompileError("operator applied where no operand exists: goal " + goal + ", disjunct " +
                       std::to_string(position) + " (" + d.str() + ")");
  }
  auto inferred = term.einsum.output;
  auto want = goal_sig.indices;
  std::sort(inferred.begin(), inferred.end());
  std::sort(want.begin(), want.end());
  if (inferred != want) {
    throw CompileError("disjunct signature conflict for goal " + goal + ": disjunct " + std::to_string(position) +
                       " gives " + labels_str(term.einsum.output) + " but the goal has " +
                       labels_str(goal_sig.indices));
  }
  // Same index set in another order: emit in the goal's order.
  term.einsum.output = goal_sig.indices;
  return term;
}

}  // namespace

EinsumSpec infer_signature(const Disjunct& d, const std::map<std::string, IndexSignature>& sigs) {
  EinsumSpec spec;
  std::map<std::string, std::size_t> count;
  std::vector<std::string> order;
  for (const auto& lit : d.body) {
    std::vector<std::string> labels;
    switch (lit.kind) {
      case BodyLiteral::Kind::Tensor: labels = lit.tensor.indices; break;
      case BodyLiteral::Kind::Subgoal: {
        auto it = sigs.find(lit.atom.str());
        if (it == sigs.end()) throw CompileError("no signature yet for subgoal " + lit.atom.str());
        labels = it->second.indices;
        break;
      }
      case BodyLiteral::Kind::Fact: break;
      case BodyLiteral::Kind::Operator: continue;
    }
    for (const auto& l : labels) {
      if (count[l]++ == 0) order.push_back(l);
    }
    spec.inputs.push_back(std::move(labels));
  }
  for (const auto& l : order) {
    if (count[l] == 1) spec.output.push_back(l);
  }
  return spec;
}

EquationSet compile(const ExplanationGraph& g, const std::map<std::string, std::size_t>& ranges,
                    const OperatorRegistry& registry) {
  EquationSet eqs;
  eqs.root = g.root;
  eqs.ranges = ranges;
  auto& sigs = eqs.signatures;

  for (const auto& scc : g.sccs) {
    eqs.groups.push_back(EvalGroup{scc.goals, scc.cyclic});
    if (!scc.cyclic) {
      const Node& n = g.node(scc.goals.front());
      sigs[scc.goals.front()] =
          make_signature(infer_signature(n.disjuncts.front(), sigs).output, ranges, scc.goals.front());
    } else {
      // Seed each member from its first disjunct whose subgoals already
      // have signatures, for at most |SCC| passes.
      for (std::size_t pass = 0; pass < scc.goals.size(); ++pass) {
        bool missing = false;
        for (const auto& goal : scc.goals) {
          if (sigs.count(goal)) continue;
          for (const auto& d : g.node(goal).disjuncts) {
            if (!resolvable(d, sigs)) continue;
            sigs[goal] = make_signature(infer_signature(d, sigs).output, ranges, goal);
            break;
          }
          missing = missing || !sigs.count(goal);
        }
        if (!missing) break;
      }
      for (const auto& goal : scc.goals) {
        if (!sigs.count(goal)) throw CompileError("unresolvable recursive signature for goal " + goal);
      }
    }
    for (const auto& goal : scc.goals) {
      const Node& n = g.node(goal);
      TensorEquation eq{n.goal, {}};
      for (std::size_t k = 0; k < n.disjuncts.size(); ++k) {
        eq.terms.push_back(lower(n.disjuncts[k], sigs, sigs.at(goal), goal, k, registry));
      }
      eqs.equations.emplace(goal, std::move(eq));
    }
  }
  return eqs;
}

ShapeReport check_shapes(const EquationSet& eqs, const std::map<std::string, std::size_t>& ranges,
                         const OperatorRegistry& registry) {
  ShapeReport report;
  auto range = [&](const std::string& i, const std::string& where) {
    auto it = ranges.find(i);
    if (it == ranges.end()) throw ShapeError(where + ": index " + i + " has no range");
    return it->second;
  };
  for (const auto& goal : eqs.evaluation_order()) {
    const TensorEquation& eq = eqs.equation(goal);
    const IndexSignature& sig = eqs.signature(goal);
    if (sig.indices.size() != sig.dims.size()) throw ShapeError("goal " + goal + ": malformed signature");
    for (std::size_t a = 0; a < sig.indices.size(); ++a) {
      if (sig.dims[a] != range(sig.indices[a], "goal " + goal)) {
        throw ShapeError("goal " + goal + ", signature axis " + std::to_string(a) + ": dimension " +
                         std::to_string(sig.dims[a]) + " but R(" + sig.indices[a] + ") = " +
                         std::to_string(range(sig.indices[a], goal)));
      }
    }
    ++report.equations;
    for (std::size_t t = 0; t < eq.terms.size(); ++t) {
      const EquationTerm& term = eq.terms[t];
      const std::string where = "goal " + goal + ", disjunct " + std::to_string(t);
      ++report.terms;
      if (term.einsum.inputs.size() != term.operands.size()) {
        throw ShapeError(where + ": " + std::to_string(term.operands.size()) + " operands for einsum " +
                         term.einsum.str());
      }
      if (term.einsum.output != sig.indices) {
        throw ShapeError(where + ": term output " + labels_str(term.einsum.output) + " differs from signature " +
                         sig.str());
      }
      for (std::size_t m = 0; m < term.operands.size(); ++m) {
        const OperandRef& op = term.operands[m];
        const auto& labels = term.einsum.inputs[m];
        const std::string at = where + ", operand " + std::to_string(m) + " (" + op.str() + ")";
        ++report.operands;
        std::vector<std::size_t> dims;
        switch (op.kind) {
          case OperandRef::Kind::Param:
            if (op.tensor.indices != labels) throw ShapeError(at + ": declared indices differ from einsum labels");
            for (const auto& i : op.tensor.indices) dims.push_back(range(i, at));
            break;
          case OperandRef::Kind::Goal: {
            const IndexSignature& sub = eqs.signature(op.goal);
            if (sub.indices != labels) throw ShapeError(at + ": subgoal signature " + sub.str() + " differs");
            dims = sub.dims;
            break;
          }
          case OperandRef::Kind::One:
            if (!labels.empty()) throw ShapeError(at + ": scalar one with labels");
            break;
        }
        for (std::size_t a = 0; a < labels.size(); ++a) {
          if (dims[a] != range(labels[a], at)) {
            throw ShapeError(at + ", axis " + std::to_string(a) + ": dimension " + std::to_string(dims[a]) +
                             " but R(" + labels[a] + ") = " + std::to_string(range(labels[a], at)));
          }
        }
      }
      std::vector<std::size_t> shape = sig.dims;
      for (auto it = term.operators.rbegin(); it != term.operators.rend(); ++it) {
        shape = registry.at(*it).shape_rule(shape);
      }
      if (shape != sig.dims) {
        throw ShapeError(where + ": operator chain changes the shape to " + shape_str(shape));
      }
    }
  }
  return report;
}

std::set<TensorKey> param_keys(const EquationSet& eqs) {
  std::set<TensorKey> out;
  for (const auto& [goal, eq] : eqs.equations) {
    for (const auto& t : eq.terms) {
      for (const auto& op : t.operands) {
        if (op.kind == OperandRef::Kind::Param) out.insert(op.tensor);
      }
    }
  }
  return out;
}

std::map<std::string, char> index_letters(const EquationSet& eqs) {
  static constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::map<std::string, char> letters;
  auto use = [&](const std::string& l) {
    if (letters.count(l)) return;
    if (letters.size() == kLetters.size()) throw CompileError("more than 52 index symbols in one equation set");
    letters.emplace(l, kLetters[letters.size()]);
  };
  for (const auto& goal : eqs.evaluation_order()) {
    for (const auto& l : eqs.signature(goal).indices) use(l);
    for (const auto& t : eqs.equation(goal).terms) {
      for (const auto& in : t.einsum.inputs) {
        for (const auto& l : in) use(l);
      }
    }
  }
  return letters;
}

nlohmann::json to_json(const EquationSet& eqs) {
  using nlohmann::json;
  const auto letters = index_letters(eqs);
  json j;
  j["root"] = eqs.root;
  j["ranges"] = eqs.ranges;
  json table = json::object();
  for (const auto& [sym, c] : letters) table[sym] = std::string(1, c);
  j["index_letters"] = table;
  j["evaluation_order"] = eqs.evaluation_order();
  json groups = json::array();
  for (const auto& g : eqs.groups) groups.push_back({{"goals", g.goals}, {"cyclic", g.cyclic}});
  j["groups"] = groups;
  json equations = json::array();
  for (const auto& goal : eqs.evaluation_order()) {
    const auto& sig = eqs.signature(goal);
    json terms = json::array();
    for (const auto& t : eqs.equation(goal).terms) {
      json operands = json::array();
      for (const auto& op : t.operands) {
        switch (op.kind) {
          case OperandRef::Kind::Param:
            operands.push_back({{"kind", "param"}, {"atom", op.tensor.atom.str()}, {"indices", op.tensor.indices}});
            break;
          case OperandRef::Kind::Goal: operands.push_back({{"kind", "goal"}, {"goal", op.goal}}); break;
          case OperandRef::Kind::One: operands.push_back({{"kind", "one"}}); break;
        }
      }
      terms.push_back({{"operands", operands}, {"einsum", t.einsum.str(letters)}, {"operators", t.operators}});
    }
    equations.push_back(
        {{"goal", goal}, {"signature", {{"indices", sig.indices}, {"dims", sig.dims}}}, {"terms", terms}});
  }
  j["equations"] = equations;
  return j;
}

EquationSet equations_from_json(const nlohmann::json& j) {
  try {
    EquationSet eqs;
    eqs.root = j.at("root").get<std::string>();
    eqs.ranges = j.at("ranges").get<std::map<std::string, std::size_t>>();
    std::map<char, std::string> symbol_of;
    for (const auto& [sym, letter] : j.at("index_letters").items()) {
      const auto s = letter.get<std::string>();
      if (s.size() != 1) throw CompileError("index letter for " + sym + " must be one character");
      symbol_of[s[0]] = sym;
    }
    for (const auto& g : j.at("groups")) {
      eqs.groups.push_back(EvalGroup{g.at("goals").get<std::vector<std::string>>(), g.at("cyclic").get<bool>()});
    }
    for (const auto& e : j.at("equations")) {
      const auto goal = e.at("goal").get<std::string>();
      eqs.signatures[goal] = IndexSignature{e.at("signature").at("indices").get<std::vector<std::string>>(),
                                            e.at("signature").at("dims").get<std::vector<std::size_t>>()};
      TensorEquation eq{parse_atom(goal), {}};
      for (const auto& t : e.at("terms")) {
        EquationTerm term;
        const EinsumSpec letters = EinsumSpec::parse(t.at("einsum").get<std::string>());
        auto rename = [&](const std::vector<std::string>& ls) {
          std::vector<std::string> out;
          for (const auto& l : ls) {
            auto it = symbol_of.find(l[0]);
            if (it == symbol_of.end()) throw CompileError("einsum letter " + l + " is not in the index table");
            out.push_back(it->second);
          }
          return out;
        };
        for (const auto& in : letters.inputs) term.einsum.inputs.push_back(rename(in));
        term.einsum.output = rename(letters.output);
        for (const auto& op : t.at("operands")) {
          const auto kind = op.at("kind").get<std::string>();
          if (kind == "param") {
            term.operands.push_back(OperandRef::param(
                TensorKey{parse_term(op.at("atom").get<std::string>()), op.at("indices").get<std::vector<std::string>>()}));
          } else if (kind == "goal") {
            term.operands.push_back(OperandRef::subgoal(op.at("goal").get<std::string>()));
          } else if (kind == "one") {
            term.operands.push_back(OperandRef::one());
          } else {
            throw CompileError("unknown operand kind " + kind);
          }
        }
        // "->" reads as zero inputs; a lone scalar operand prints the same way.
        if (term.einsum.inputs.empty() && term.operands.size() == 1) term.einsum.inputs.emplace_back();
        term.operators = t.at("operators").get<std::vector<std::string>>();
        eq.terms.push_back(std::move(term));
      }
      eqs.equations.emplace(goal, std::move(eq));
    }
    return eqs;
  } catch (const nlohmann::json::exception& e) {
    throw CompileError(std::string("malformed equation JSON: ") + e.what());
  }
}

}  // namespace tenlog
