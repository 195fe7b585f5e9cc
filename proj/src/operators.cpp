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

#include "tenlog/operators.hpp"

#include <algorithm>
#include <cmath>

#include "tenlog/error.hpp"

namespace tenlog {

void OperatorRegistry::add(OperatorDef def) {
  std::string name = def.name;
  defs_.insert_or_assign(std::move(name), std::move(def));
}

const OperatorDef& OperatorRegistry::at(const std::string& name) const {
  auto it = defs_.find(name);
  if (it == defs_.end()) throw CompileError("unknown operator " + name + " in literal operator(" + name + ")");
  return it->second;
}

std::vector<std::string> OperatorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : defs_) out.push_back(k);
  return out;
}

namespace {

std::vector<std::size_t> same_shape(const std::vector<std::size_t>& s) { return s; }

template <class F>
DenseTensor map(const DenseTensor& x, F f) {
  DenseTensor y(x.shape());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = f(x[k]);
  return y;
}

// gx = gy * d(x, y) elementwise.
template <class D>
DenseTensor chain(const DenseTensor& x, const DenseTensor& y, const DenseTensor& gy, D d) {
  DenseTensor gx(x.shape());
  for (std::size_t k = 0; k < x.size(); ++k) gx[k] = gy[k] * d(x[k], y[k]);
  return gx;
}

OperatorDef elementwise(std::string name, double (*f)(double), double (*df)(double, double)) {
  return OperatorDef{
      std::move(name),
      [f](const DenseTensor& x) { return map(x, f); },
      [df](const DenseTensor& x, const DenseTensor& y, const DenseTensor& gy) { return chain(x, y, gy, df); },
      same_shape,
  };
}

DenseTensor softmax_forward(const DenseTensor& x) {
  DenseTensor y(x.shape());
  const std::size_t n = x.is_scalar() ? 1 : x.shape().back();
  for (std::size_t row = 0; row < x.size(); row += n) {
    double m = x[row];
    for (std::size_t k = 1; k < n; ++k) m = std::max(m, x[row + k]);
    double z = 0.0;
    for (std::size_t k = 0; k < n; ++k) z += y[row + k] = std::exp(x[row + k] - m);
    for (std::size_t k = 0; k < n; ++k) y[row + k] /= z;
  }
  return y;
}

DenseTensor softmax_backward(const DenseTensor& x, const DenseTensor& y, const DenseTensor& gy) {
  DenseTensor gx(x.shape());
  const std::size_t n = x.is_scalar() ? 1 : x.shape().back();
  for (std::size_t row = 0; row < x.size(); row += n) {
    double dot = 0.0;
    for (std::size_t k = 0; k < n; ++k) dot += gy[row + k] * y[row + k];
    for (std::size_t k = 0; k < n; ++k) gx[row + k] = y[row + k] * (gy[row + k] - dot);
  }
  return gx;
}

OperatorRegistry make_builtins() {
  OperatorRegistry r;
  r.add(elementwise(
      "sigmoid", [](double x) { return 1.0 / (1.0 + std::exp(-x)); }, [](double, double y) { return y * (1.0 - y); }));
  r.add(elementwise(
      "tanh", [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; }));
  r.add(elementwise(
      "relu", [](double x) { return x > 0.0 ? x : 0.0; }, [](double x, double) { return x > 0.0 ? 1.0 : 0.0; }));
  r.add(elementwise(
      "log", [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; }));
  r.add(elementwise(
      "exp", [](double x) { return std::exp(x); }, [](double, double y) { return y; }));
  r.add(elementwise(
      "negative", [](double x) { return -x; }, [](double, double) { return -1.0; }));
  r.add(OperatorDef{"softmax", softmax_forward, softmax_backward, same_shape});
  return r;
}

}  // namespace

const OperatorRegistry& builtin_operators() {
  static const OperatorRegistry registry = make_builtins();
  return registry;
}

}  // namespace tenlog
