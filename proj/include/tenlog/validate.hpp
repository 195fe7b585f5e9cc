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

#include "tenlog/syntax.hpp"

namespace tenlog {

struct ValidationReport {
  /// Sorted, so the report does not depend on clause order.
  std::vector<std::string> warnings;
};

/// Checks the declaration rules: every body `tensor(T, L)` matches a declared
/// pattern carrying L, every index has a range, `operator/1` names are
/// constants. Throws ValidationError on the first violation (in a stable
/// order); non-fatal findings go to the report.
ValidationReport validate(const SourceProgram& p);

/// True when `atom` is an instance of the declaration pattern.
bool pattern_matches(const Term& pattern, const Term& atom);

/// The declaration covering tensor atom `atom` with index list `indices`, or
/// nullptr when none does.
const IndexDeclaration* find_declaration(const std::vector<IndexDeclaration>& decls, const Term& atom,
                                         const std::vector<std::string>& indices);

/// Index symbols of a `tensor/2` second argument. Throws ValidationError when
/// it is not a list of constants.
std::vector<std::string> index_symbols(const Term& list);

}  // namespace tenlog
