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
#include <optional>
#include <string>

#include "tenlog/term.hpp"

namespace tenlog {

/// Variable bindings. Values produced by `unify` are idempotent: no bound
/// variable occurs in any binding's value.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init) : bindings_(init) {}

  const Term* find(const std::string& var) const;
  void bind(const std::string& var, Term value) { bindings_.insert_or_assign(var, std::move(value)); }
  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const noexcept { return bindings_; }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

/// One-pass replacement: bound variables are replaced by their value as stored.
Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);

/// Follows chains of bindings until no bound variable remains.
Term resolve(const Substitution& s, const Term& t);
Atom resolve(const Substitution& s, const Atom& a);

/// Rewrites a (possibly triangular) substitution into idempotent form.
Substitution normalize(const Substitution& s);

/// Most general unifier with occurs check, in idempotent form.
std::optional<Substitution> unify(const Term& a, const Term& b);
std::optional<Substitution> unify(const Atom& a, const Atom& b);

/// Extends `s` in place. On failure `s` may hold partial bindings; callers
/// that need rollback pass a copy.
bool unify_into(const Term& a, const Term& b, Substitution& s);
bool unify_into(const Atom& a, const Atom& b, Substitution& s);

/// Source of fresh variable suffixes. Not thread-safe; each search owns one.
class FreshNames {
 public:
  std::uint64_t next() noexcept { return ++counter_; }

 private:
  std::uint64_t counter_ = 0;
};

/// Returns a variant of `c` whose variables carry a suffix never issued before
/// by `fresh`.
Clause rename_apart(const Clause& c, FreshNames& fresh);

/// Variables renamed V0, V1, ... in first-occurrence order; equal keys mean
/// the atoms are variants.
std::string variant_key(const Atom& a);

}  // namespace tenlog
