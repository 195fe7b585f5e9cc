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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"
#include "tenlog/error.hpp"
#include "tenlog/explain.hpp"
#include "tenlog/syntax.hpp"

using namespace tenlog;

namespace {

const char* kSimple =
    "index_list(v(_),[[i]]).\nindex_list(r(_),[[i]]).\n:- set_index_range(i,20).\n"
    "rel(S,R,O) :- tensor(v(S),[i]), tensor(v(O),[i]), tensor(r(R),[i]).\n";

std::set<std::string> disjunct_set(const Node& n) {
  std::set<std::string> out;
  for (const auto& d : n.disjuncts) out.insert(d.str());
  return out;
}

}  // namespace

TEST(Explain, SimpleDistMultGoal) {
  const auto g = build_explanation_graph(parse_program(kSimple), parse_atom("rel(s0,r0,o0)"));
  ASSERT_EQ(g.nodes.size(), 1u);
  const Node& n = g.root_node();
  ASSERT_EQ(n.disjuncts.size(), 1u);
  const auto refs = n.disjuncts[0].tensor_refs();
  ASSERT_EQ(refs.size(), 3u);
  EXPECT_EQ(refs[0].str(), "v(s0)[i]");
  EXPECT_EQ(refs[1].str(), "v(o0)[i]");
  EXPECT_EQ(refs[2].str(), "r(r0)[i]");
  EXPECT_TRUE(n.disjuncts[0].subgoal_refs().empty());
  ASSERT_EQ(g.sccs.size(), 1u);
  EXPECT_FALSE(g.sccs[0].cyclic);
}

TEST(Explain, TwoFactOnlyAlternatives) {
  const auto g = build_explanation_graph(parse_program("p :- q.\np :- r.\nq.\nr.\n"), parse_atom("p"));
  const Node& n = g.root_node();
  ASSERT_EQ(n.disjuncts.size(), 2u);
  EXPECT_EQ(n.disjuncts[0].fact_count(), 1u);
  EXPECT_EQ(n.disjuncts[1].fact_count(), 1u);
  EXPECT_EQ(disjunct_set(n), (std::set<std::string>{"q", "r"}));
}

TEST(Explain, SelfLoopIsCyclicComponent) {
  const auto g = build_explanation_graph(
      parse_program("path(X,Y) :- edge(X,Y).\npath(X,Y) :- edge(X,Z), path(Z,Y).\nedge(a,a).\n"),
      parse_atom("path(a,a)"));
  ASSERT_EQ(g.nodes.size(), 1u);
  const Node& n = g.root_node();
  EXPECT_EQ(disjunct_set(n), (std::set<std::string>{"edge(a,a)", "edge(a,a), path(a,a)"}));
  ASSERT_EQ(g.sccs.size(), 1u);
  EXPECT_TRUE(g.sccs[0].cyclic);
  EXPECT_EQ(g.sccs[0].goals, std::vector<std::string>{"path(a,a)"});
}

TEST(Explain, ChainCondensesDependenciesFirst) {
  const auto g = build_explanation_graph(parse_program("p :- q, s.\nq :- r, s.\nr :- s.\ns.\n"), parse_atom("p"));
  const auto sccs = condense_sccs(g);
  ASSERT_EQ(sccs.size(), 3u);
  EXPECT_EQ(sccs[0].goals, std::vector<std::string>{"r"});
  EXPECT_EQ(sccs[1].goals, std::vector<std::string>{"q"});
  EXPECT_EQ(sccs[2].goals, std::vector<std::string>{"p"});
  for (const auto& s : sccs) EXPECT_FALSE(s.cyclic);
}

TEST(Explain, OperatorsKeepSourceOrder) {
  const auto g = build_explanation_graph(parse_program("b :- operator(f), operator(g), a.\na.\n"), parse_atom("b"));
  EXPECT_EQ(g.root_node().disjuncts[0].operator_refs(), (std::vector<std::string>{"f", "g"}));
}

TEST(Explain, DuplicateGroundInstancesMerge) {
  const auto g = build_explanation_graph(parse_program("p :- q(X).\np :- q(a).\nq(a).\n"), parse_atom("p"));
  EXPECT_EQ(g.root_node().disjuncts.size(), 1u);
}

TEST(Explain, Errors) {
  const auto p = parse_program("p :- q.\nr(X) :- s(X).\ns(a).\n");
  EXPECT_THROW(build_explanation_graph(p, parse_atom("p")), UnprovableGoal);
  EXPECT_THROW(build_explanation_graph(p, parse_atom("r(X)")), SearchError);
  const auto inf = parse_program("n(z).\nn(s(X)) :- n(X).\nbig :- n(X), stop(X).\n");
  ExplainOptions tight;
  tight.node_budget = 50;
  EXPECT_THROW(build_explanation_graph(inf, parse_atom("big"), tight), ResourceError);
}

TEST(Explain, UnprovableAlternativesArePruned) {
  const auto g = build_explanation_graph(parse_program("p :- q.\np :- r.\nq.\n"), parse_atom("p"));
  EXPECT_EQ(disjunct_set(g.root_node()), std::set<std::string>{"q"});
}

TEST(Explain, JsonShape) {
  const auto j = to_json(build_explanation_graph(parse_program(kSimple), parse_atom("rel(s0,r0,o0)")));
  EXPECT_EQ(j["root"], "rel(s0,r0,o0)");
  ASSERT_EQ(j["nodes"].size(), 1u);
  EXPECT_EQ(j["nodes"][0]["disjuncts"][0]["tensors"].size(), 3u);
  EXPECT_TRUE(j.contains("sccs"));
}

TEST(Explain, RepeatedSearchIsStable) {
  const auto p = parse_program("path(X,Y) :- edge(X,Y).\npath(X,Y) :- edge(X,Z), path(Z,Y).\n"
                               "edge(a,b).\nedge(b,a).\nedge(b,c).\n");
  const auto g1 = build_explanation_graph(p, parse_atom("path(a,c)"));
  const auto g2 = build_explanation_graph(p, parse_atom("path(a,c)"));
  EXPECT_EQ(to_json(g1), to_json(g2));
}

TEST(Explain, ClauseOrderChangesOnlyDisjunctOrder) {
  std::mt19937_64 rng(11);
  const auto base = parse_program(
      "path(X,Y) :- edge(X,Y).\npath(X,Y) :- edge(X,Z), path(Z,Y).\nedge(a,b).\nedge(b,a).\nedge(b,c).\n");
  const auto ref = build_explanation_graph(base, parse_atom("path(a,c)"));
  for (int trial = 0; trial < 10; ++trial) {
    auto p = base;
    std::shuffle(p.clauses.begin(), p.clauses.end(), rng);
    const auto g = build_explanation_graph(p, parse_atom("path(a,c)"));
    ASSERT_EQ(g.nodes.size(), ref.nodes.size());
    for (const auto& [k, n] : ref.nodes) EXPECT_EQ(disjunct_set(g.node(k)), disjunct_set(n));
  }
}

TEST(Explain, MatchesLeastModelOnRandomPrograms) {
  std::mt19937_64 rng(2024);
  const std::vector<Term> domain{Term::constant("a"), Term::constant("b"), Term::constant("c")};
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = parse_program(oracle::random_logic_program(rng));
    const auto model = oracle::least_model(oracle::ground(p, domain));
    Explainer ex(p);
    for (const auto& atom : model.true_atoms) {
      const auto expected = oracle::expected_graph(model, parse_atom(atom));
      const auto g = ex.explain(parse_atom(atom));
      std::map<std::string, std::set<std::string>> got;
      for (const auto& [k, n] : g.nodes) got[k] = disjunct_set(n);
      EXPECT_EQ(got, expected) << "goal " << atom;
    }
  }
}
