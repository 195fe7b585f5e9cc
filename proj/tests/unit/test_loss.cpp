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
#include "tenlog/loss.hpp"

using namespace tenlog;

TEST(NllLoss, KnownValues) {
  EXPECT_EQ(nll_loss(1.0).value, 0.0);
  EXPECT_NEAR(nll_loss(std::exp(-1.0)).value, 1.0, 1e-15);
  EXPECT_NEAR(nll_loss(0.25).grad, -4.0, 1e-15);
}

TEST(NllLoss, DomainErrorNamesGoal) {
  try {
    nll_loss(0.0, "rel(a,b,c)");
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("rel(a,b,c)"), std::string::npos);
  }
  EXPECT_THROW(nll_loss(-1.0), NumericError);
}

TEST(MarginLoss, KnownValues) {
  EXPECT_EQ(margin_kg_loss(5, 3, 1).value, 0.0);
  const auto h = margin_kg_loss(3, 5, 1);
  EXPECT_EQ(h.value, 3.0);
  EXPECT_EQ(h.d_pos, -1.0);
  EXPECT_EQ(h.d_neg, 1.0);
  EXPECT_EQ(margin_kg_loss(2, 2, 0).value, 0.0);
}

TEST(MarginLoss, KinkUsesZeroSubgradient) {
  const auto h = margin_kg_loss(3, 2, 1);
  EXPECT_EQ(h.value, 0.0);
  EXPECT_EQ(h.d_pos, 0.0);
  EXPECT_EQ(h.d_neg, 0.0);
}

TEST(MarginLoss, LiteralFormFlipsOrientation) {
  EXPECT_EQ(margin_kg_loss(5, 3, 1, true).value, 1.0);
  EXPECT_EQ(margin_kg_loss(3, 5, 1, true).value, 0.0);
  const auto h = margin_kg_loss(5, 3, 1, true);
  EXPECT_EQ(h.d_pos, 1.0);
  EXPECT_EQ(h.d_neg, -1.0);
}
