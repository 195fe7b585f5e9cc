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

#include "tenlog/optimizer.hpp"

#include <cmath>
#include <cstdint>

#include "tenlog/error.hpp"

namespace tenlog {

namespace {

constexpr std::size_t kParallelThreshold = 4096;

void check_shape(const ParamStore& params, const TensorKey& key, const DenseTensor& g) {
  if (params.at(key).shape() != g.shape()) {
    throw ShapeError("gradient for " + key.str() + " has shape " + shape_str(g.shape()) + ", parameter has " +
                     shape_str(params.at(key).shape()));
  }
}

}  // namespace

void adam_step(OptimizerState& state, ParamStore& params, const std::map<TensorKey, DenseTensor>& grads,
               Execution exec) {
  for (const auto& [key, g] : grads) {
    if (!params.contains(key)) throw Error("gradient for unknown parameter " + key.str());
    check_shape(params, key, g);
  }
  ++state.step;
  const auto& c = state.config;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);
  for (const auto& [key, entry] : params.entries()) {
    if (!entry.trainable) continue;
    DenseTensor& theta = params.at(key);
    auto [mit, m_new] = state.first.try_emplace(key, DenseTensor(theta.shape()));
    auto [vit, v_new] = state.second.try_emplace(key, DenseTensor(theta.shape()));
    auto git = grads.find(key);
    const double* g = git == grads.end() ? nullptr : git->second.data().data();
    double* th = theta.data().data();
    double* m = mit->second.data().data();
    double* v = vit->second.data().data();
    const auto n = static_cast<std::int64_t>(theta.size());
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel && n >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t k = 0; k < n; ++k) {
      const double gk = g ? g[k] : 0.0;
      m[k] = c.beta1 * m[k] + (1.0 - c.beta1) * gk;
      v[k] = c.beta2 * v[k] + (1.0 - c.beta2) * gk * gk;
      const double mhat = m[k] / bc1;
      const double vhat = v[k] / bc2;
      th[k] -= c.lr * mhat / (std::sqrt(vhat) + c.eps);
    }
  }
}

void sgd_step(OptimizerState& state, ParamStore& params, const std::map<TensorKey, DenseTensor>& grads,
              Execution exec) {
  for (const auto& [key, g] : grads) {
    if (!params.contains(key)) throw Error("gradient for unknown parameter " + key.str());
    check_shape(params, key, g);
  }
  ++state.step;
  const double lr = state.config.lr;
  for (const auto& [key, grad] : grads) {
    if (!params.trainable(key)) continue;
    double* th = params.at(key).data().data();
    const double* g = grad.data().data();
    const auto n = static_cast<std::int64_t>(grad.size());
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel && n >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t k = 0; k < n; ++k) th[k] -= lr * g[k];
  }
}

void optimizer_step(OptimizerState& state, ParamStore& params, const std::map<TensorKey, DenseTensor>& grads,
                    Execution exec) {
  if (state.config.kind == OptimizerKind::Adam) {
    adam_step(state, params, grads, exec);
  } else {
    sgd_step(state, params, grads, exec);
  }
}

}  // namespace tenlog
