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
#include <optional>
#include <string>

#include "tenlog/params.hpp"
#include "tenlog/vocab.hpp"

namespace tenlog {

/// Extra records stored next to the weights.
struct CheckpointMeta {
  Vocab entities;
  Vocab relations;
  /// Head argument indexing the output axis, when the model has one.
  std::optional<std::size_t> label_arg;
  std::string predicate;

  friend bool operator==(const CheckpointMeta&, const CheckpointMeta&) = default;
};

struct Checkpoint {
  ParamStore params;
  CheckpointMeta meta;
};

/// Writes `dir/manifest.json` and `dir/weights.bin` (little-endian f32,
/// row-major), creating the directory if needed.
void save_checkpoint(const ParamStore& params, const std::string& dir, const CheckpointMeta& meta = {});

/// Throws CheckpointError on a corrupt manifest, "blob length mismatch" when
/// weights.bin disagrees with the manifest, and a range mismatch when
/// `ranges` (the current program's) disagree with a stored shape.
Checkpoint load_checkpoint(const std::string& dir, const std::optional<std::map<std::string, std::size_t>>& ranges = {});

}  // namespace tenlog
