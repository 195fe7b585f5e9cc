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

#include <optional>
#include <string>
#include <vector>

#include "tenlog/term.hpp"
#include "tenlog/vocab.hpp"

namespace tenlog {

struct GoalDataset {
  std::vector<Atom> goals;
  /// Head argument indexing the model's output axis (vector-valued goals).
  std::optional<std::size_t> label_arg;
};

/// One ground atom per line, '.' terminated, '%' comments allowed. Throws
/// DataError for missing files or non-ground goals and ParseError for syntax.
GoalDataset load_goals(const std::string& path);
GoalDataset parse_goals(const std::string& text);

/// Printed name of an argument as a vocabulary symbol.
std::string symbol_of(const Term& t);

/// Inverse of symbol_of: integers stay integers, everything else is a constant.
Term term_of(const std::string& symbol);

/// Entity vocabulary in first-appearance order over the subject (first
/// argument) and object slot of every goal.
Vocab entity_vocab(const std::vector<Atom>& goals, std::size_t object_arg);

}  // namespace tenlog
