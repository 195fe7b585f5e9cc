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

#include "tenlog/explain.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tenlog/error.hpp"
#include "tenlog/unify.hpp"
#include "tenlog/validate.hpp"

namespace tenlog {

std::string BodyLiteral::str() const {
  switch (kind) {
    case Kind::Tensor: return "tensor(" + tensor.atom.str() + "," + Term::list([&] {
                                std::vector<Term> xs;
                                for (const auto& i : tensor.indices) xs.push_back(Term::constant(i));
                                return xs;
                              }()).str() + ")";
    case Kind::Operator: return "operator(" + quote_symbol(op) + ")";
    case Kind::Subgoal:
    case Kind::Fact: return atom.str();
  }
  return {};
}

std::vector<TensorKey> Disjunct::tensor_refs() const {
  std::vector<TensorKey> out;
  for (const auto& l : body) {
    if (l.kind == BodyLiteral::Kind::Tensor) out.push_back(l.tensor);
  }
  return out;
}

std::vector<std::string> Disjunct::operator_refs() const {
  std::vector<std::string> out;
  for (const auto& l : body) {
    if (l.kind == BodyLiteral::Kind::Operator) out.push_back(l.op);
  }
  return out;
}

std::vector<Atom> Disjunct::subgoal_refs() const {
  std::vector<Atom> out;
  for (const auto& l : body) {
    if (l.kind == BodyLiteral::Kind::Subgoal) out.push_back(l.atom);
  }
  return out;
}

std::size_t Disjunct::fact_count() const {
  return static_cast<std::size_t>(std::count_if(body.begin(), body.end(), [](const BodyLiteral& l) {
    return l.kind == BodyLiteral::Kind::Fact;
  }));
}

std::string Disjunct::str() const {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += body[i].str();
  }
  return out.empty() ? "true" : out;
}

const Node& ExplanationGraph::node(const std::string& key) const {
  auto it = nodes.find(key);
  if (it == nodes.end()) throw Error("no node for goal " + key);
  return it->second;
}

struct Explainer::Impl {
  struct Table {
    std::vector<Atom> answers;
    std::unordered_set<std::string> seen;
    std::size_t pass = 0;
    bool complete = false;
  };

  const SourceProgram& program;
  ExplainOptions options;
  std::unordered_map<std::string, std::vector<const Clause*>> by_indicator;
  FreshNames fresh;
  std::unordered_map<std::string, Table> tables;
  std::unordered_map<std::string, bool> pure_fact_cache;
  std::size_t pass = 0;
  bool changed = false;
  std::size_t depth = 0;
  std::size_t work = 0;  // tables created + nodes built in the current explain()

  Impl(const SourceProgram& p, ExplainOptions o) : program(p), options(o) {
    for (const auto& c : program.clauses) by_indicator[c.head.indicator()].push_back(&c);
  }

  void charge() {
    if (++work > options.node_budget) {
      throw ResourceError("proof search exceeded the node budget of " + std::to_string(options.node_budget));
    }
  }

  const std::vector<const Clause*>& clauses_for(const Atom& a) const {
    static const std::vector<const Clause*> none;
    auto it = by_indicator.find(a.indicator());
    return it == by_indicator.end() ? none : it->second;
  }

  // Enumerates substitutions satisfying the logical literals of body[i..].
  // Tensor and operator literals always succeed.
  void solve_body(const std::vector<Atom>& body, std::size_t i, const Substitution& s,
                  const std::function<void(const Substitution&)>& emit) {
    while (i < body.size() && (is_tensor_literal(body[i]) || is_operator_literal(body[i]))) ++i;
    if (i == body.size()) {
      emit(s);
      return;
    }
    const Atom call = resolve(s, body[i]);
    const std::vector<Atom> found = table_answers(call);
    for (const auto& ans : found) {
      Substitution next = s;
      if (unify_into(call, ans, next)) solve_body(body, i + 1, next, emit);
    }
  }

  // One evaluation of a table within the current pass.
  std::vector<Atom> evaluate(const Atom& call) {
    const std::string key = variant_key(call);
    auto it = tables.find(key);
    if (it == tables.end()) {
      charge();
      it = tables.emplace(key, Table{}).first;
    }
    if (it->second.complete || it->second.pass == pass) return it->second.answers;
    it->second.pass = pass;

    if (++depth > options.depth_limit) {
      --depth;
      throw ResourceError("proof search exceeded the depth limit of " + std::to_string(options.depth_limit) +
                          " at " + call.str());
    }
    for (const Clause* clause : clauses_for(call)) {
      Clause c = rename_apart(*clause, fresh);
      Substitution s;
      if (!unify_into(c.head, call, s)) continue;
      solve_body(c.body, 0, s, [&](const Substitution& sol) {
        Atom ans = resolve(sol, c.head);
        if (!ans.is_ground()) {
          throw SearchError("non-ground answer " + ans.str() + " for call " + call.str() +
                            " (a head variable is not bound by the body)");
        }
        Table& t = tables.at(key);
        if (t.seen.insert(ans.str()).second) {
          t.answers.push_back(std::move(ans));
          changed = true;
        }
      });
    }
    --depth;
    return tables.at(key).answers;
  }

  std::vector<Atom> table_answers(const Atom& call) {
    // Inside a fixpoint run: evaluate (or reuse this pass's answers).
    if (in_fixpoint) return evaluate(call);
    return complete_answers(call);
  }

  bool in_fixpoint = false;

  std::vector<Atom> complete_answers(const Atom& call) {
    const std::string key = variant_key(call);
    auto it = tables.find(key);
    if (it != tables.end() && it->second.complete) return it->second.answers;
    in_fixpoint = true;
    try {
      do {
        changed = false;
        ++pass;
        evaluate(call);
      } while (changed);
    } catch (...) {
      in_fixpoint = false;
      // Partial tables from an aborted run are not trustworthy.
      depth = 0;
      std::erase_if(tables, [](const auto& kv) { return !kv.second.complete; });
      throw;
    }
    in_fixpoint = false;
    for (auto& [k, t] : tables) t.complete = true;
    return tables.at(key).answers;
  }

  // All ground body instances for a ground goal, in clause order, deduplicated.
  std::vector<Disjunct> ground_bodies(const Atom& goal) {
    std::vector<Disjunct> out;
    std::set<std::string> seen;
    for (const Clause* clause : clauses_for(goal)) {
      Clause c = rename_apart(*clause, fresh);
      Substitution s;
      if (!unify_into(c.head, goal, s)) continue;
      solve_body(c.body, 0, s, [&](const Substitution& sol) {
        Disjunct d;
        for (const auto& lit : c.body) {
          BodyLiteral b;
          if (is_tensor_literal(lit)) {
            Term atom = resolve(sol, lit.args[0]);
            if (!atom.is_ground()) {
              throw SearchError("tensor atom " + atom.str() + " is not ground in clause " + clause->str() +
                                " for goal " + goal.str());
            }
            if (!atom.is_constant() && !atom.is_compound()) {
              throw SearchError("tensor atom must be an atom, got " + atom.str());
            }
            b.kind = BodyLiteral::Kind::Tensor;
            b.tensor = TensorKey{std::move(atom), index_symbols(resolve(sol, lit.args[1]))};
          } else if (is_operator_literal(lit)) {
            Term name = resolve(sol, lit.args[0]);
            if (!name.is_constant()) {
              throw SearchError("operator name must be a ground constant, got " + name.str());
            }
            b.kind = BodyLiteral::Kind::Operator;
            b.op = name.name();
          } else {
            b.kind = BodyLiteral::Kind::Subgoal;
            b.atom = resolve(sol, lit);
          }
          d.body.push_back(std::move(b));
        }
        if (seen.insert(d.str()).second) out.push_back(std::move(d));
      });
    }
    return out;
  }

  // A ground atom that holds only as a plain fact: one body instance, empty.
  bool is_pure_fact(const Atom& a) {
    const std::string key = a.str();
    if (auto it = pure_fact_cache.find(key); it != pure_fact_cache.end()) return it->second;
    bool pure = true;
    bool any = false;
    for (const Clause* clause : clauses_for(a)) {
      Clause c = rename_apart(*clause, fresh);
      Substitution s;
      if (!unify_into(c.head, a, s)) continue;
      solve_body(c.body, 0, s, [&](const Substitution&) {
        any = true;
        if (!c.body.empty()) pure = false;
      });
      if (!pure) break;
    }
    pure = pure && any;
    pure_fact_cache.emplace(key, pure);
    return pure;
  }

  ExplanationGraph explain(const Atom& goal) {
    if (!goal.is_ground()) throw SearchError("goal must be ground: " + goal.str());
    work = 0;
    if (complete_answers(goal).empty()) throw UnprovableGoal("unprovable goal " + goal.str());

    ExplanationGraph g;
    g.root = goal.str();
    std::deque<Atom> pending{goal};
    g.nodes.emplace(g.root, Node{goal, {}});
    while (!pending.empty()) {
      Atom current = std::move(pending.front());
      pending.pop_front();
      charge();
      std::vector<Disjunct> disjuncts = ground_bodies(current);
      for (auto& d : disjuncts) {
        for (auto& lit : d.body) {
          if (lit.kind != BodyLiteral::Kind::Subgoal) continue;
          if (is_pure_fact(lit.atom)) {
            lit.kind = BodyLiteral::Kind::Fact;
            continue;
          }
          auto [it, inserted] = g.nodes.try_emplace(lit.atom.str(), Node{lit.atom, {}});
          if (inserted) pending.push_back(lit.atom);
        }
      }
      // Folding may make two bodies identical only if they were already equal.
      g.nodes.at(current.str()).disjuncts = std::move(disjuncts);
    }
    g.sccs = condense_sccs(g);
    return g;
  }
};

Explainer::Explainer(const SourceProgram& program, ExplainOptions options)
    : impl_(std::make_unique<Impl>(program, options)) {}
Explainer::~Explainer() = default;
Explainer::Explainer(Explainer&&) noexcept = default;
Explainer& Explainer::operator=(Explainer&&) noexcept = default;

ExplanationGraph Explainer::explain(const Atom& goal) { return impl_->explain(goal); }

std::vector<Atom> Explainer::answers(const Atom& call) {
  impl_->work = 0;
  return impl_->complete_answers(call);
}

ExplanationGraph build_explanation_graph(const SourceProgram& p, const Atom& goal, const ExplainOptions& options) {
  return Explainer(p, options).explain(goal);
}

std::vector<Scc> condense_sccs(const ExplanationGraph& g) {
  // Iterative Tarjan over the node map in key order.
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> id;
  for (const auto& [k, n] : g.nodes) {
    id.emplace(k, keys.size());
    keys.push_back(k);
  }
  const std::size_t n = keys.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<bool> self_loop(n, false);
  for (const auto& [k, node] : g.nodes) {
    const std::size_t u = id.at(k);
    std::set<std::size_t> seen;
    for (const auto& d : node.disjuncts) {
      for (const auto& s : d.subgoal_refs()) {
        auto it = id.find(s.str());
        if (it == id.end()) throw Error("dangling subgoal reference " + s.str());
        if (it->second == u) self_loop[u] = true;
        if (seen.insert(it->second).second) succ[u].push_back(it->second);
      }
    }
  }

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<Scc> out;
  std::size_t counter = 0;

  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{start, 0}};
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < succ[v].size()) {
        std::size_t w = succ[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Scc scc;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc.goals.push_back(keys[w]);
        } while (w != v);
        std::sort(scc.goals.begin(), scc.goals.end());
        scc.cyclic = scc.goals.size() > 1 || self_loop[v];
        out.push_back(std::move(scc));
      }
      const std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return out;
}

nlohmann::json to_json(const ExplanationGraph& g) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& [key, node] : g.nodes) {
    json ds = json::array();
    for (const auto& d : node.disjuncts) {
      json tensors = json::array();
      for (const auto& t : d.tensor_refs()) tensors.push_back({{"atom", t.atom.str()}, {"indices", t.indices}});
      json subgoals = json::array();
      for (const auto& s : d.subgoal_refs()) subgoals.push_back(s.str());
      json facts = json::array();
      for (const auto& l : d.body) {
        if (l.kind == BodyLiteral::Kind::Fact) facts.push_back(l.atom.str());
      }
      ds.push_back({{"tensors", tensors},
                    {"operators", d.operator_refs()},
                    {"subgoals", subgoals},
                    {"facts", facts},
                    {"fact_count", d.fact_count()},
                    {"body", d.str()}});
    }
    nodes.push_back({{"goal", key}, {"disjuncts", ds}});
  }
  json sccs = json::array();
  for (const auto& s : g.sccs) sccs.push_back({{"goals", s.goals}, {"cyclic", s.cyclic}});
  return {{"root", g.root}, {"nodes", nodes}, {"sccs", sccs}};
}

}  // namespace tenlog
