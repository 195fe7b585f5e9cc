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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tenlog/term.hpp"

namespace tenlog {

/// From `index_list(Pattern, [[i,...], ...]).`: the tensor atoms matching
/// `pattern` are embedded tensors indexed by each inner list.
struct IndexDeclaration {
  Term pattern;
  std::vector<std::vector<std::string>> index_lists;

  friend bool operator==(const IndexDeclaration&, const IndexDeclaration&) = default;
};

/// `:- set_index_range(i, N).`
struct RangeDeclaration {
  std::string index;
  std::size_t size = 0;

  friend bool operator==(const RangeDeclaration&, const RangeDeclaration&) = default;
};

struct SourceProgram {
  std::vector<Clause> clauses;
  std::vector<IndexDeclaration> index_decls;
  std::vector<RangeDeclaration> range_decls;

  /// index symbol -> size
  std::map<std::string, std::size_t> ranges() const;
  std::optional<std::size_t> range_of(const std::string& index) const;

  friend bool operator==(const SourceProgram&, const SourceProgram&) = default;
};

/// Parses a whole program. Throws ParseError with line and column.
SourceProgram parse_program(std::string_view source);
SourceProgram load_program(const std::string& path);

/// Parses a single term, e.g. a goal from the command line. A trailing `.`
/// is optional.
Term parse_term(std::string_view text);
Atom parse_atom(std::string_view text);

/// Parses `atom.` lines (with `%` comments) such as a goal dataset.
std::vector<Atom> parse_atoms(std::string_view text);

/// Canonical program text: index declarations, then range directives, then
/// clauses. Parsing the output yields an equal SourceProgram.
std::string print_program(const SourceProgram& p);

}  // namespace tenlog
