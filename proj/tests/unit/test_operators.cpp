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
#include <random>

#include "support/oracles.hpp"
#include "tenlog/error.hpp"
#include "tenlog/operators.hpp"

using namespace tenlog;

TEST(Operators, BuiltinsPresent) {
  const auto& reg = builtin_operators();
  for (const char* n : {"sigmoid", "tanh", "relu", "softmax", "log", "exp", "negative"}) EXPECT_TRUE(reg.contains(n));
  EXPECT_THROW(reg.at("nope"), CompileError);
}

TEST(Operators, KnownValues) {
  const auto& reg = builtin_operators();
  EXPECT_DOUBLE_EQ(reg.at("sigmoid").forward(DenseTensor::scalar(0)).item(), 0.5);
  EXPECT_EQ(reg.at("softmax").forward(DenseTensor::vector({0, 0})), DenseTensor::vector({0.5, 0.5}));
  EXPECT_EQ(reg.at("relu").forward(DenseTensor::vector({-3, 3})), DenseTensor::vector({0, 3}));
  EXPECT_EQ(reg.at("negative").forward(DenseTensor::vector({2, -1})), DenseTensor::vector({-2, 1}));
}

TEST(Operators, SoftmaxIsRowwise) {
  const auto y = builtin_operators().at("softmax").forward(DenseTensor::matrix({{1, 2, 3}, {0, 0, 0}}));
  EXPECT_NEAR(y.at({0, 0}) + y.at({0, 1}) + y.at({0, 2}), 1.0, 1e-15);
  EXPECT_NEAR(y.at({1, 1}), 1.0 / 3.0, 1e-15);
}

TEST(Operators, ShapePreserving) {
  for (const auto& name : builtin_operators().names()) {
    EXPECT_EQ(builtin_operators().at(name).shape_rule({3, 4}), (std::vector<std::size_t>{3, 4})) << name;
  }
}

TEST(Operators, BackwardMatchesFiniteDifferences) {
  std::mt19937_64 rng(17);
  for (const auto& name : builtin_operators().names()) {
    const auto& op = builtin_operators().at(name);
    const bool positive = name == "log";
    for (int point = 0; point < 20; ++point) {
      auto x = oracle::random_tensor({3}, rng, positive ? 0.2 : -2.0, 2.0);
      if (name == "relu") {
        for (auto& v : x.data())
          if (std::abs(v) < 1e-3) v = 0.5;
      }
      const auto gy = oracle::random_tensor({3}, rng);
      const auto y = op.forward(x);
      const auto gx = op.backward(x, y, gy);
      for (std::size_t k = 0; k < x.size(); ++k) {
        auto f = [&] {
          const auto out = op.forward(x);
          double acc = 0;
          for (std::size_t m = 0; m < out.size(); ++m) acc += out[m] * gy[m];
          return acc;
        };
        const double fd = oracle::central_difference(f, x[k], 1e-6);
        EXPECT_NEAR(gx[k], fd, 1e-6 * std::max(1.0, std::abs(fd))) << name << " point " << point;
      }
    }
  }
}
