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

#include "tenlog/syntax.hpp"
#include "tenlog/term.hpp"
#include "tenlog/unify.hpp"

using namespace tenlog;

TEST(Term, PrintsPlainAndQuotedConstants) {
  EXPECT_EQ(Term::constant("abc").str(), "abc");
  EXPECT_EQ(Term::constant("Abc").str(), "'Abc'");
  EXPECT_EQ(Term::constant("it's").str(), "'it''s'");
  EXPECT_EQ(parse_term(Term::constant("it's").str()), Term::constant("it's"));
  EXPECT_EQ(Term::integer(-4).str(), "-4");
  EXPECT_EQ(Term::compound("f", {Term::constant("a"), Term::variable("X")}).str(), "f(a,X)");
  EXPECT_EQ(Term::list({Term::constant("i"), Term::constant("j")}).str(), "[i,j]");
}

TEST(Term, ZeroArityCompoundIsConstant) {
  EXPECT_EQ(Term::compound("a", {}), Term::constant("a"));
  EXPECT_TRUE(Term::compound("a", {}).is_constant());
}

TEST(Term, OrderingIsTotalAndConsistent) {
  const Term a = Term::constant("a");
  const Term b = Term::constant("b");
  EXPECT_LT(a, b);
  EXPECT_EQ(a, Term::constant("a"));
  EXPECT_NE(Term::integer(1), Term::constant("1"));
}

TEST(Term, GroundnessLooksThroughArguments) {
  EXPECT_TRUE(parse_term("f(a,[b,g(c)])").is_ground());
  EXPECT_FALSE(parse_term("f(a,[b,g(X)])").is_ground());
}

TEST(Atom, IndicatorAndRoundTrip) {
  const Atom a = parse_atom("rel(s0,r0,o0)");
  EXPECT_EQ(a.indicator(), "rel/3");
  EXPECT_EQ(Atom::from_term(a.to_term()), a);
  EXPECT_EQ(parse_atom(a.str()), a);
}

TEST(Unify, BindsVariablesBothWays) {
  auto s = unify(parse_term("f(X,b)"), parse_term("f(a,Y)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(apply(*s, parse_term("g(X,Y)")), parse_term("g(a,b)"));
}

TEST(Unify, FailsOnClashAndOccursCheck) {
  EXPECT_FALSE(unify(parse_term("f(a)"), parse_term("f(b)")));
  EXPECT_FALSE(unify(parse_term("X"), parse_term("f(X)")));
  EXPECT_FALSE(unify(parse_term("f(a,b)"), parse_term("f(a)")));
}

TEST(Unify, ChainsResolveFully) {
  auto s = unify(parse_term("f(X,Y,Z)"), parse_term("f(Y,Z,c)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(resolve(*s, parse_term("X")), parse_term("c"));
}

TEST(Unify, VariantKeysIgnoreVariableNames) {
  EXPECT_EQ(variant_key(parse_atom("p(X,Y,X)")), variant_key(parse_atom("p(A,B,A)")));
  EXPECT_NE(variant_key(parse_atom("p(X,Y,X)")), variant_key(parse_atom("p(A,B,B)")));
}

TEST(Unify, RenameApartGivesFreshVariables) {
  FreshNames fresh;
  const Clause c{parse_atom("p(X)"), {parse_atom("q(X,Y)")}};
  const Clause r1 = rename_apart(c, fresh);
  const Clause r2 = rename_apart(c, fresh);
  EXPECT_NE(r1.head, r2.head);
  EXPECT_EQ(r1.head.args[0], r1.body[0].args[0]);
}
