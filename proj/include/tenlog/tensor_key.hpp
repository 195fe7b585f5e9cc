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
#include <vector>

#include "tenlog/term.hpp"

namespace tenlog {

/// Identity of one embedded tensor: the ground tensor atom together with the
/// index list it is used with. `tensor(v(a),[i])` and `tensor(v(a),[j])` are
/// different tensors.
struct TensorKey {
  Term atom;
  std::vector<std::string> indices;

  /// e.g. "v(a)[i]"
  std::string str() const {
    std::string out = atom.str() + "[";
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (k) out += ',';
      out += quote_symbol(indices[k]);
    }
    return out + "]";
  }

  friend bool operator==(const TensorKey&, const TensorKey&) = default;
  friend auto operator<=>(const TensorKey&, const TensorKey&) = default;
};

}  // namespace tenlog
