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

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tenlog {

/// Immutable first-order term. Copies share argument storage.
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Integer, Compound, List };

  Term() : Term(Kind::Constant, "[]") {}

  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term integer(std::int64_t value);
  /// A zero-arity compound collapses to a constant.
  static Term compound(std::string functor, std::vector<Term> args);
  static Term list(std::vector<Term> elements);

  Kind kind() const noexcept { return kind_; }
  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  bool is_integer() const noexcept { return kind_ == Kind::Integer; }
  bool is_compound() const noexcept { return kind_ == Kind::Compound; }
  bool is_list() const noexcept { return kind_ == Kind::List; }
  bool is_atomic() const noexcept { return kind_ == Kind::Constant || kind_ == Kind::Integer; }

  /// Constant name, variable name or compound functor.
  const std::string& name() const noexcept { return name_; }
  std::int64_t value() const noexcept { return value_; }
  /// Compound arguments or list elements; empty for everything else.
  const std::vector<Term>& args() const noexcept;
  std::size_t arity() const noexcept { return args().size(); }

  bool is_ground() const;
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    return compare(a, b) <=> 0;
  }

 private:
  Term(Kind kind, std::string name, std::int64_t value = 0,
       std::shared_ptr<const std::vector<Term>> args = nullptr)
      : kind_(kind), name_(std::move(name)), value_(value), args_(std::move(args)) {}

  static int compare(const Term& a, const Term& b);
  void write(std::string& out) const;

  Kind kind_;
  std::string name_;
  std::int64_t value_ = 0;
  std::shared_ptr<const std::vector<Term>> args_;
};

/// Writes a constant name, quoting it when it is not a plain lowercase identifier.
std::string quote_symbol(const std::string& name);

/// predicate(args...). Zero args prints as a bare name.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const noexcept { return args.size(); }
  bool is_ground() const;
  std::string str() const;
  /// "name/arity"
  std::string indicator() const;
  Term to_term() const;
  /// Accepts constants and compounds; throws for anything else.
  static Atom from_term(const Term& t);

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Clause {
  Atom head;
  std::vector<Atom> body;

  bool is_fact() const noexcept { return body.empty(); }
  std::string str() const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Reserved literals that never appear in a clause head.
inline bool is_tensor_literal(const Atom& a) { return a.predicate == "tensor" && a.arity() == 2; }
inline bool is_operator_literal(const Atom& a) {
  return a.predicate == "operator" && a.arity() == 1;
}

}  // namespace tenlog
