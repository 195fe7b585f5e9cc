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

#include "tenlog/term.hpp"

#include <cctype>

#include "tenlog/error.hpp"

namespace tenlog {

namespace {
const std::vector<Term> kNoArgs;

bool is_plain_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}
}  // namespace

Term Term::constant(std::string name) { return Term(Kind::Constant, std::move(name)); }

Term Term::variable(std::string name) { return Term(Kind::Variable, std::move(name)); }

Term Term::integer(std::int64_t value) { return Term(Kind::Integer, {}, value); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return constant(std::move(functor));
  return Term(Kind::Compound, std::move(functor), 0,
              std::make_shared<const std::vector<Term>>(std::move(args)));
}

Term Term::list(std::vector<Term> elements) {
  return Term(Kind::List, {}, 0, std::make_shared<const std::vector<Term>>(std::move(elements)));
}

const std::vector<Term>& Term::args() const noexcept { return args_ ? *args_ : kNoArgs; }

bool Term::is_ground() const {
  if (kind_ == Kind::Variable) return false;
  for (const auto& a : args()) {
    if (!a.is_ground()) return false;
  }
  return true;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_ ? -1 : 1;
  if (a.kind_ == Kind::Integer) return a.value_ < b.value_ ? -1 : (a.value_ > b.value_ ? 1 : 0);
  if (int c = a.name_.compare(b.name_); c != 0) return c < 0 ? -1 : 1;
  if (a.args_ == b.args_) return 0;
  const auto& xs = a.args();
  const auto& ys = b.args();
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  }
  return 0;
}

std::string quote_symbol(const std::string& name) {
  if (is_plain_name(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') {
      out += "''";
    } else if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

void Term::write(std::string& out) const {
  switch (kind_) {
    case Kind::Constant:
      out += quote_symbol(name_);
      return;
    case Kind::Variable:
      // Parser-generated anonymous variables print back as `_`.
      out += name_.starts_with("_#") ? std::string("_") : name_;
      return;
    case Kind::Integer:
      out += std::to_string(value_);
      return;
    case Kind::Compound:
      out += quote_symbol(name_);
      out += '(';
      break;
    case Kind::List:
      out += '[';
      break;
  }
  const auto& xs = args();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    xs[i].write(out);
  }
  out += kind_ == Kind::List ? ']' : ')';
}

std::string Term::str() const {
  std::string out;
  write(out);
  return out;
}

bool Atom::is_ground() const {
  for (const auto& a : args) {
    if (!a.is_ground()) return false;
  }
  return true;
}

std::string Atom::str() const { return to_term().str(); }

std::string Atom::indicator() const { return predicate + "/" + std::to_string(args.size()); }

Term Atom::to_term() const { return Term::compound(predicate, args); }

Atom Atom::from_term(const Term& t) {
  if (t.is_constant()) return Atom{t.name(), {}};
  if (t.is_compound()) return Atom{t.name(), t.args()};
  throw Error("expected an atom, got " + t.str());
}

std::string Clause::str() const {
  std::string out = head.str();
  if (!body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].str();
    }
  }
  out += '.';
  return out;
}

}  // namespace tenlog
