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

#include "tenlog/unify.hpp"

#include <vector>

namespace tenlog {

const Term* Substitution::find(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term apply(const Substitution& s, const Term& t) {
  if (t.is_variable()) {
    const Term* v = s.find(t.name());
    return v ? *v : t;
  }
  if (t.args().empty() || t.is_ground()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(s, a));
  return t.is_list() ? Term::list(std::move(args)) : Term::compound(t.name(), std::move(args));
}

Atom apply(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply(s, t));
  return out;
}

namespace {

const Term& walk(const Substitution& s, const Term& t) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    const Term* next = s.find(cur->name());
    if (!next) break;
    cur = next;
  }
  return *cur;
}

bool occurs(const Substitution& s, const std::string& var, const Term& t) {
  const Term& w = walk(s, t);
  if (w.is_variable()) return w.name() == var;
  for (const auto& a : w.args()) {
    if (occurs(s, var, a)) return true;
  }
  return false;
}

}  // namespace

Term resolve(const Substitution& s, const Term& t) {
  const Term& w = walk(s, t);
  if (w.args().empty() || w.is_ground()) return w;
  std::vector<Term> args;
  args.reserve(w.args().size());
  for (const auto& a : w.args()) args.push_back(resolve(s, a));
  return w.is_list() ? Term::list(std::move(args)) : Term::compound(w.name(), std::move(args));
}

Atom resolve(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(resolve(s, t));
  return out;
}

Substitution normalize(const Substitution& s) {
  Substitution out;
  for (const auto& [var, value] : s.bindings()) {
    Term r = resolve(s, value);
    if (r.is_variable() && r.name() == var) continue;
    out.bind(var, std::move(r));
  }
  return out;
}

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  const Term& x = walk(s, a);
  const Term& y = walk(s, b);
  if (x.is_variable() && y.is_variable() && x.name() == y.name()) return true;
  if (x.is_variable()) {
    if (occurs(s, x.name(), y)) return false;
    s.bind(x.name(), y);
    return true;
  }
  if (y.is_variable()) {
    if (occurs(s, y.name(), x)) return false;
    s.bind(y.name(), x);
    return true;
  }
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Integer:
      return x.value() == y.value();
    case Term::Kind::Constant:
      return x.name() == y.name();
    case Term::Kind::Compound:
      if (x.name() != y.name()) return false;
      [[fallthrough]];
    case Term::Kind::List: {
      if (x.args().size() != y.args().size()) return false;
      // Copies keep argument storage alive while `s` grows.
      const Term xs = x;
      const Term ys = y;
      for (std::size_t i = 0; i < xs.args().size(); ++i) {
        if (!unify_into(xs.args()[i], ys.args()[i], s)) return false;
      }
      return true;
    }
    case Term::Kind::Variable:
      break;
  }
  return false;
}

bool unify_into(const Atom& a, const Atom& b, Substitution& s) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_into(a.args[i], b.args[i], s)) return false;
  }
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_into(a, b, s)) return std::nullopt;
  return normalize(s);
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  Substitution s;
  if (!unify_into(a, b, s)) return std::nullopt;
  return normalize(s);
}

namespace {

Term rename_term(const Term& t, const std::string& suffix) {
  if (t.is_variable()) return Term::variable(t.name() + suffix);
  if (t.args().empty() || t.is_ground()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_term(a, suffix));
  return t.is_list() ? Term::list(std::move(args)) : Term::compound(t.name(), std::move(args));
}

Atom rename_atom(const Atom& a, const std::string& suffix) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(rename_term(t, suffix));
  return out;
}

void variant_write(const Term& t, std::map<std::string, std::size_t>& names, std::string& out) {
  if (t.is_variable()) {
    auto [it, inserted] = names.try_emplace(t.name(), names.size());
    out += "_V" + std::to_string(it->second);
    return;
  }
  if (t.args().empty()) {
    out += t.str();
    return;
  }
  out += t.is_list() ? "[" : quote_symbol(t.name()) + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    variant_write(t.args()[i], names, out);
  }
  out += t.is_list() ? ']' : ')';
}

}  // namespace

Clause rename_apart(const Clause& c, FreshNames& fresh) {
  bool ground = c.head.is_ground();
  for (const auto& b : c.body) ground = ground && b.is_ground();
  if (ground) return c;
  const std::string suffix = "_" + std::to_string(fresh.next());
  Clause out{rename_atom(c.head, suffix), {}};
  out.body.reserve(c.body.size());
  for (const auto& b : c.body) out.body.push_back(rename_atom(b, suffix));
  return out;
}

std::string variant_key(const Atom& a) {
  std::map<std::string, std::size_t> names;
  std::string out = quote_symbol(a.predicate);
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      variant_write(a.args[i], names, out);
    }
    out += ')';
  }
  return out;
}

}  // namespace tenlog
