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

#include "tenlog/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tenlog/error.hpp"
#include "tenlog/unify.hpp"

namespace tenlog {

bool pattern_matches(const Term& pattern, const Term& atom) {
  // Pattern variables are anonymous; the atom's variables may bind too.
  Substitution s;
  return unify_into(pattern, atom, s);
}

std::vector<std::string> index_symbols(const Term& list) {
  if (!list.is_list()) throw ValidationError("tensor index must be a list, got " + list.str());
  std::vector<std::string> out;
  for (const auto& t : list.args()) {
    if (!t.is_constant()) throw ValidationError("tensor index symbols must be constants, got " + list.str());
    out.push_back(t.name());
  }
  return out;
}

const IndexDeclaration* find_declaration(const std::vector<IndexDeclaration>& decls, const Term& atom,
                                         const std::vector<std::string>& indices) {
  for (const auto& d : decls) {
    if (!pattern_matches(d.pattern, atom)) continue;
    if (std::find(d.index_lists.begin(), d.index_lists.end(), indices) != d.index_lists.end()) return &d;
  }
  return nullptr;
}

namespace {
std::string join(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += xs[i];
  }
  return out + "]";
}
}  // namespace

ValidationReport validate(const SourceProgram& p) {
  const auto ranges = p.ranges();

  // Ranges first, in a clause-order-independent sweep.
  std::set<std::string> missing;
  for (const auto& d : p.index_decls) {
    for (const auto& list : d.index_lists) {
      for (const auto& idx : list) {
        if (!ranges.count(idx)) missing.insert(idx);
      }
    }
  }
  if (!missing.empty()) throw ValidationError("index " + *missing.begin() + " has no range");

  std::set<std::string> defined;
  for (const auto& c : p.clauses) defined.insert(c.head.indicator());

  // Collect findings keyed by text so the first reported error is stable
  // under clause permutations.
  std::set<std::string> errors;
  std::set<std::string> warnings;
  std::vector<bool> used(p.index_decls.size(), false);

  for (const auto& c : p.clauses) {
    for (const auto& lit : c.body) {
      if (is_tensor_literal(lit)) {
        const Term& atom = lit.args[0];
        if (!atom.is_constant() && !atom.is_compound() && !atom.is_variable()) {
          errors.insert("tensor atom must be an atom, got " + atom.str() + " in " + c.str());
          continue;
        }
        std::vector<std::string> idx;
        try {
          idx = index_symbols(lit.args[1]);
        } catch (const ValidationError& e) {
          errors.insert(std::string(e.what()) + " in " + c.str());
          continue;
        }
        bool any_pattern = false;
        bool covered = false;
        for (std::size_t k = 0; k < p.index_decls.size(); ++k) {
          const auto& d = p.index_decls[k];
          if (!pattern_matches(d.pattern, atom)) continue;
          any_pattern = true;
          if (std::find(d.index_lists.begin(), d.index_lists.end(), idx) != d.index_lists.end()) {
            covered = true;
            used[k] = true;
          }
        }
        if (!any_pattern) {
          errors.insert("undeclared tensor atom " + lit.str());
        } else if (!covered) {
          bool arity_ok = false;
          for (const auto& d : p.index_decls) {
            if (!pattern_matches(d.pattern, atom)) continue;
            for (const auto& l : d.index_lists) arity_ok = arity_ok || l.size() == idx.size();
          }
          errors.insert(std::string(arity_ok ? "undeclared index list " : "index list arity mismatch: ") +
                        join(idx) + " for tensor atom " + atom.str());
        }
      } else if (is_operator_literal(lit)) {
        const Term& name = lit.args[0];
        if (!name.is_constant() && !name.is_variable()) {
          errors.insert("operator name must be a constant, got " + name.str());
        }
      } else if (lit.predicate == "index_list" || lit.predicate == "set_index_range") {
        errors.insert("declaration " + lit.indicator() + " used as a body literal");
      } else if (!defined.count(lit.indicator())) {
        warnings.insert("undefined predicate " + lit.indicator() + " (its literals always fail)");
      }
    }
  }
  if (!errors.empty()) throw ValidationError(*errors.begin());

  for (std::size_t k = 0; k < p.index_decls.size(); ++k) {
    if (!used[k]) warnings.insert("unused declaration index_list(" + p.index_decls[k].pattern.str() + ", ...)");
  }
  std::set<std::string> declared_indices;
  for (const auto& d : p.index_decls) {
    for (const auto& l : d.index_lists) declared_indices.insert(l.begin(), l.end());
  }
  for (const auto& r : p.range_decls) {
    if (!declared_indices.count(r.index)) warnings.insert("range for index " + r.index + " is never used");
  }
  return ValidationReport{{warnings.begin(), warnings.end()}};
}

}  // namespace tenlog
