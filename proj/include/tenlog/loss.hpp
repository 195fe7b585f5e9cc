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

#pragma once

#include <string>

namespace tenlog {

struct LossValue {
  double value = 0.0;
  /// d value / d q
  double grad = 0.0;
};

/// -log q. Throws NumericError naming `goal` when q <= 0.
LossValue nll_loss(double q, const std::string& goal = "goal");

struct HingeValue {
  double value = 0.0;
  double d_pos = 0.0;
  double d_neg = 0.0;
};

/// max(0, gamma - pos + neg). With `literal_form` the orientation is
/// max(0, pos - neg - gamma) instead. The subgradient at the kink is 0.
HingeValue margin_kg_loss(double pos, double neg, double gamma, bool literal_form = false);

}  // namespace tenlog
