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

#include <random>

#include "support/oracles.hpp"
#include "tenlog/einsum.hpp"
#include "tenlog/error.hpp"

using namespace tenlog;

TEST(Einsum, IdentityMatmul) {
  const auto a = DenseTensor::matrix({{1, 2}, {3, 4}});
  const auto id = DenseTensor::matrix({{1, 0}, {0, 1}});
  EXPECT_EQ(einsum(EinsumSpec::parse("ij,jk->ik"), {&a, &id}), a);
}

TEST(Einsum, TripleProduct) {
  const auto s = DenseTensor::vector({1, 2});
  const auto r = DenseTensor::vector({1, 1});
  const auto o = DenseTensor::vector({3, 1});
  EXPECT_DOUBLE_EQ(einsum(EinsumSpec::parse("i,i,i->"), {&s, &r, &o}).item(), 5.0);
}

TEST(Einsum, ScoreAllObjects) {
  const auto s = DenseTensor::vector({1, 0});
  const auto v = DenseTensor::matrix({{2, 3}, {4, 5}});
  const auto r = DenseTensor::vector({1, 1});
  EXPECT_EQ(einsum(EinsumSpec::parse("i,oi,i->o"), {&s, &v, &r}), DenseTensor::vector({2, 4}));
}

TEST(Einsum, Trace) {
  const auto a = DenseTensor::matrix({{1, 2}, {3, 4}});
  EXPECT_DOUBLE_EQ(einsum(EinsumSpec::parse("ii->"), {&a}).item(), 5.0);
}

TEST(Einsum, ZeroOperandsIsOne) {
  EXPECT_DOUBLE_EQ(einsum(EinsumSpec::parse("->"), {}).item(), 1.0);
}

TEST(Einsum, Errors) {
  const auto a = DenseTensor::matrix({{1, 2}, {3, 4}});
  const auto b = DenseTensor::vector({1, 2, 3});
  EXPECT_THROW(einsum(EinsumSpec::parse("ij,j->i"), {&a, &b}), ShapeError);
  EXPECT_THROW(einsum(EinsumSpec::parse("ij,j->i"), {&a}), ShapeError);
  EXPECT_THROW(einsum(EinsumSpec::parse("i->i"), {&a}), ShapeError);
}

TEST(Einsum, SpecText) {
  const auto s = EinsumSpec::parse("i,oi,i->o");
  EXPECT_EQ(s.inputs.size(), 3u);
  EXPECT_EQ(s.str(), "i,o.i,i->o");
  EXPECT_EQ(s.str({{"i", 'a'}, {"o", 'b'}}), "a,ba,a->b");
}

TEST(Einsum, SerialAndParallelAgree) {
  std::mt19937_64 rng(3);
  const auto a = oracle::random_tensor({64, 96}, rng);
  const auto b = oracle::random_tensor({96, 80}, rng);
  const auto spec = EinsumSpec::parse("ij,jk->ik");
  const auto s = einsum(spec, {&a, &b}, Execution::Serial);
  const auto p = einsum(spec, {&a, &b}, Execution::Parallel);
  EXPECT_EQ(s, p);
}

TEST(Einsum, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> specs{"ij,jk->ik", "ijk,kj->i", "ij,ij->", "i,j->ij", "iij,j->i", "ijk->kji",
                                       "ab,bc,ca->", "a,b,c->abc"};
  for (const auto& text : specs) {
    const auto spec = EinsumSpec::parse(text);
    std::map<std::string, std::size_t> sizes;
    for (const auto& in : spec.inputs)
      for (const auto& l : in) sizes.emplace(l, 2 + sizes.size() % 3);
    std::vector<DenseTensor> ts;
    for (const auto& in : spec.inputs) {
      std::vector<std::size_t> shape;
      for (const auto& l : in) shape.push_back(sizes.at(l));
      ts.push_back(oracle::random_tensor(shape, rng));
    }
    std::vector<const DenseTensor*> ops;
    for (const auto& t : ts) ops.push_back(&t);
    const auto got = einsum(spec, ops);
    const auto want = oracle::brute_einsum(spec, ops, sizes);
    ASSERT_EQ(got.shape(), want.shape()) << text;
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-12) << text;
  }
}
