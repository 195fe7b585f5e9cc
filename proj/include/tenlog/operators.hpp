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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tenlog/tensor.hpp"

namespace tenlog {

struct OperatorDef {
  std::string name;
  std::function<DenseTensor(const DenseTensor& x)> forward;
  /// Vector-Jacobian product: given input x, output y = forward(x) and the
  /// upstream gradient gy, returns the gradient with respect to x.
  std::function<DenseTensor(const DenseTensor& x, const DenseTensor& y, const DenseTensor& gy)> backward;
  std::function<std::vector<std::size_t>(const std::vector<std::size_t>&)> shape_rule;
};

class OperatorRegistry {
 public:
  void add(OperatorDef def);
  bool contains(const std::string& name) const { return defs_.count(name) != 0; }
  /// Throws CompileError naming the operator when it is not registered.
  const OperatorDef& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, OperatorDef> defs_;
};

/// sigmoid, tanh, relu, softmax (last axis), log, exp, negative.
const OperatorRegistry& builtin_operators();

}  // namespace tenlog
