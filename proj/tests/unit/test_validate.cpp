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

#include "tenlog/error.hpp"
#include "tenlog/syntax.hpp"
#include "tenlog/validate.hpp"

using namespace tenlog;

TEST(Validate, AcceptsDeclaredTensors) {
  const auto p = parse_program(
      "index_list(v(_),[[i]]).\n:- set_index_range(i,2).\np(X) :- tensor(v(X),[i]), q(X).\nq(a).\n");
  EXPECT_TRUE(validate(p).warnings.empty());
}

TEST(Validate, MissingRange) {
  const auto p = parse_program("index_list(v,[[i]]).\np :- tensor(v,[i]).\n");
  EXPECT_THROW(validate(p), ValidationError);
}

TEST(Validate, UndeclaredTensorAndArity) {
  EXPECT_THROW(validate(parse_program(":- set_index_range(i,2).\np :- tensor(w,[i]).\n")), ValidationError);
  try {
    validate(parse_program("index_list(w,[[i]]).\n:- set_index_range(i,2).\n:- set_index_range(j,2).\n"
                           "p :- tensor(w,[i,j]).\n"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("arity mismatch"), std::string::npos);
  }
}

TEST(Validate, WarnsAboutUndefinedAndUnused) {
  const auto p = parse_program("index_list(w,[[i]]).\n:- set_index_range(i,2).\n:- set_index_range(k,2).\np :- q.\n");
  const auto w = validate(p).warnings;
  ASSERT_EQ(w.size(), 3u);
  EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
}

TEST(Validate, FirstErrorIsIndependentOfClauseOrder) {
  const std::string a = "p :- tensor(x,[i]).\n";
  const std::string b = "q :- tensor(y,[i]).\n";
  const std::string head = ":- set_index_range(i,2).\n";
  std::string e1, e2;
  try { validate(parse_program(head + a + b)); } catch (const ValidationError& e) { e1 = e.what(); }
  try { validate(parse_program(head + b + a)); } catch (const ValidationError& e) { e2 = e.what(); }
  EXPECT_FALSE(e1.empty());
  EXPECT_EQ(e1, e2);
}

TEST(Validate, PatternMatching) {
  EXPECT_TRUE(pattern_matches(parse_term("v(_)"), parse_term("v(a)")));
  EXPECT_FALSE(pattern_matches(parse_term("v(_)"), parse_term("v")));
  EXPECT_TRUE(pattern_matches(parse_term("v"), parse_term("v")));
}
