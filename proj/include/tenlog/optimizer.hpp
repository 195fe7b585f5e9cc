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

#include <cstdint>
#include <map>
#include <string>

#include "tenlog/einsum.hpp"
#include "tenlog/params.hpp"

namespace tenlog {

enum class OptimizerKind { SGD, Adam };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct OptimizerState {
  OptimizerConfig config;
  std::uint64_t step = 0;
  std::map<TensorKey, DenseTensor> first;
  std::map<TensorKey, DenseTensor> second;
};

/// Bias-corrected Adam over every trainable tensor in the store; tensors
/// missing from `grads` get a zero gradient. Elementwise, so serial and
/// parallel execution agree bit for bit.
void adam_step(OptimizerState& state, ParamStore& params, const std::map<TensorKey, DenseTensor>& grads,
               Execution exec = Execution::Parallel);

/// theta -= lr * g for every tensor in `grads`.
void sgd_step(OptimizerState& state, ParamStore& params, const std::map<TensorKey, DenseTensor>& grads,
              Execution exec = Execution::Parallel);

/// Dispatches on state.config.kind.
void optimizer_step(OptimizerState& state, ParamStore& params, const std::map<TensorKey, DenseTensor>& grads,
                    Execution exec = Execution::Parallel);

}  // namespace tenlog
