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

#include <cmath>

#include "tenlog/error.hpp"
#include "tenlog/params.hpp"
#include "tenlog/syntax.hpp"

using namespace tenlog;

namespace {
TensorKey key(const std::string& atom, std::vector<std::string> idx) { return {parse_term(atom), std::move(idx)}; }
}  // namespace

TEST(Params, SeededInitIsDeterministic) {
  const auto p = parse_program("index_list(v(_),[[i]]).\n:- set_index_range(i,20).\n");
  const std::set<TensorKey> keys{key("v(a)", {"i"}), key("v(b)", {"i"}), key("v(c)", {"i"})};
  const auto a = init_params(p.index_decls, p.ranges(), keys, 7);
  const auto b = init_params(p.index_decls, p.ranges(), keys, 7);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 3u);
  for (const auto& [k, e] : a.entries()) EXPECT_EQ(e.value.shape(), std::vector<std::size_t>{20});
  EXPECT_NE(init_params(p.index_decls, p.ranges(), keys, 8), a);
}

TEST(Params, EmptyDeclarationsGiveEmptyStore) {
  EXPECT_EQ(init_params({}, {}, {}, 7).size(), 0u);
}

TEST(Params, UndeclaredKeyRejected) {
  const auto p = parse_program("index_list(v(_),[[i]]).\n:- set_index_range(i,2).\n");
  EXPECT_THROW(init_params(p.index_decls, p.ranges(), {key("w", {"i"})}, 1), ValidationError);
}

TEST(Params, GroundDeclarationsInitializedWithoutUse) {
  const auto p = parse_program("index_list(v_all,[[o,i]]).\n:- set_index_range(i,4).\n:- set_index_range(o,3).\n");
  const auto s = init_params(p.index_decls, p.ranges(), {}, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.at(key("v_all", {"o", "i"})).shape(), (std::vector<std::size_t>{3, 4}));
}

TEST(Params, ValueDoesNotDependOnCreationOrder) {
  ParamStore a({{"i", 8}}, 3), b({{"i", 8}}, 3);
  a.ensure(key("x", {"i"}));
  a.ensure(key("y", {"i"}));
  b.ensure(key("y", {"i"}));
  b.ensure(key("x", {"i"}));
  EXPECT_EQ(a, b);
}

TEST(Params, NormalScaleFollowsLastAxis) {
  const auto t = initial_value(key("x", {"i"}), {40000}, 5, InitScheme::Normal);
  double sq = 0;
  for (double v : t.data()) sq += v * v;
  EXPECT_NEAR(std::sqrt(sq / 40000.0), 1.0 / 200.0, 1e-4);
  const auto z = initial_value(key("x", {"i"}), {4}, 5, InitScheme::Zeros);
  EXPECT_EQ(z, DenseTensor({4}, 0.0));
}

TEST(Params, SetChecksShape) {
  ParamStore s({{"i", 2}}, 0);
  EXPECT_THROW(s.set(key("x", {"i"}), DenseTensor::vector({1, 2, 3})), ShapeError);
  s.set(key("x", {"i"}), DenseTensor::vector({1, 2}), false);
  EXPECT_FALSE(s.trainable(key("x", {"i"})));
  EXPECT_THROW(s.at(key("y", {"i"})), Error);
}
