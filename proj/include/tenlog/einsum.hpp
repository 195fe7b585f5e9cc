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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tenlog/tensor.hpp"

namespace tenlog {

/// Generalized Einstein summation: every label absent from `output` is
/// summed, however many times it occurs. A label repeated inside one operand
/// selects that operand's diagonal.
struct EinsumSpec {
  std::vector<std::vector<std::string>> inputs;
  std::vector<std::string> output;

  /// Parses single-letter notation such as "ij,jk->ik" or "ii->".
  static EinsumSpec parse(std::string_view text);
  /// Single-letter notation using `letters` for the label mapping.
  std::string str(const std::map<std::string, char>& letters) const;
  /// Labels joined as written, e.g. "i,o.i,i->o" (multi-char safe).
  std::string str() const;

  friend bool operator==(const EinsumSpec&, const EinsumSpec&) = default;
};

enum class Execution { Serial, Parallel };

/// Evaluates `spec` over `operands`. Multi-operand specs are contracted
/// left to right, pairwise, keeping only labels needed downstream. Each
/// output element is accumulated in a fixed row-major order over its summed
/// labels, so Serial and Parallel results are bit-identical.
DenseTensor einsum(const EinsumSpec& spec, const std::vector<const DenseTensor*>& operands,
                   Execution exec = Execution::Parallel);

/// As above; `extra_sizes` gives sizes for output labels that occur in no
/// input (the result is broadcast along them).
DenseTensor einsum(const EinsumSpec& spec, const std::vector<const DenseTensor*>& operands,
                   const std::map<std::string, std::size_t>& extra_sizes, Execution exec = Execution::Parallel);

inline DenseTensor einsum_serial(const EinsumSpec& spec, const std::vector<const DenseTensor*>& operands) {
  return einsum(spec, operands, Execution::Serial);
}

}  // namespace tenlog
