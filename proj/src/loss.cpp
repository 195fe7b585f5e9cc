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

#include "tenlog/loss.hpp"

#include <cmath>

#include "tenlog/error.hpp"

namespace tenlog {

LossValue nll_loss(double q, const std::string& goal) {
  if (!(q > 0.0)) throw NumericError("negative log likelihood needs q > 0, but q(" + goal + ") = " + std::to_string(q));
  return {-std::log(q), -1.0 / q};
}

HingeValue margin_kg_loss(double pos, double neg, double gamma, bool literal_form) {
  const double z = literal_form ? pos - neg - gamma : gamma - pos + neg;
  if (z <= 0.0) return {};
  return literal_form ? HingeValue{z, 1.0, -1.0} : HingeValue{z, -1.0, 1.0};
}

}  // namespace tenlog
