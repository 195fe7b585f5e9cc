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

#include "tenlog/syntax.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "tenlog/error.hpp"

namespace tenlog {

std::map<std::string, std::size_t> SourceProgram::ranges() const {
  std::map<std::string, std::size_t> out;
  for (const auto& r : range_decls) out.emplace(r.index, r.size);
  return out;
}

std::optional<std::size_t> SourceProgram::range_of(const std::string& index) const {
  for (const auto& r : range_decls) {
    if (r.index == index) return r.size;
  }
  return std::nullopt;
}

namespace {

enum class Tok { Name, Var, Int, LParen, RParen, LBracket, RBracket, Comma, Dot, Neck, Bar, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::Name;
      t.text = ident();
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Var;
      t.text = ident();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      t.kind = Tok::Int;
      std::size_t start = pos_;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      std::string digits(src_.substr(start, pos_ - start));
      try {
        t.value = std::stoll(digits);
      } catch (const std::out_of_range&) {
        throw ParseError(t.line, t.column, "integer out of range: " + digits);
      }
      t.text = digits;
      return t;
    }
    if (c == '\'') {
      t.kind = Tok::Name;
      t.text = quoted(t);
      return t;
    }
    switch (c) {
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case '[': advance(); t.kind = Tok::LBracket; return t;
      case ']': advance(); t.kind = Tok::RBracket; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case '|': advance(); t.kind = Tok::Bar; return t;
      case '.':
        advance();
        t.kind = Tok::Dot;
        if (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
            src_[pos_] != '%') {
          throw ParseError(t.line, t.column, "'.' must be followed by whitespace or end of input");
        }
        return t;
      case ':':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
          advance();
          advance();
          t.kind = Tok::Neck;
          return t;
        }
        break;
      case ';':
        throw ParseError(t.line, t.column, "disjunction ';' is not supported; write separate clauses");
      case '!':
        throw ParseError(t.line, t.column, "cut '!' is not supported");
      case '\\':
        throw ParseError(t.line, t.column, "negation is not supported");
      case '=':
      case '<':
      case '>':
      case '+':
      case '*':
      case '/':
        throw ParseError(t.line, t.column, std::string("operators and arithmetic are not supported: '") + c + "'");
      default:
        break;
    }
    throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      advance();
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string quoted(const Token& t) {
    advance();
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw ParseError(t.line, t.column, "unterminated quoted atom");
      char c = src_[pos_];
      if (c == '\'') {
        advance();
        if (pos_ < src_.size() && src_[pos_] == '\'') {
          out += '\'';
          advance();
          continue;
        }
        return out;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) throw ParseError(t.line, t.column, "unterminated quoted atom");
        char e = src_[pos_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': out += '\\'; break;
          case '\'': out += '\''; break;
          default:
            throw ParseError(line_, col_, std::string("unknown escape '\\") + e + "'");
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Name: return "name";
    case Tok::Var: return "variable";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Neck: return "':-'";
    case Tok::Bar: return "'|'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  SourceProgram program() {
    SourceProgram p;
    while (cur_.kind != Tok::End) {
      if (cur_.kind == Tok::Neck) {
        directive(p);
      } else {
        clause(p);
      }
    }
    return p;
  }

  Term term() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Var:
        bump();
        if (t.text == "_") return Term::variable("_#" + std::to_string(++anon_));
        return Term::variable(t.text);
      case Tok::Int:
        bump();
        return Term::integer(t.value);
      case Tok::Name: {
        bump();
        if (cur_.kind != Tok::LParen) return Term::constant(t.text);
        bump();
        std::vector<Term> args;
        args.push_back(term());
        while (cur_.kind == Tok::Comma) {
          bump();
          args.push_back(term());
        }
        expect(Tok::RParen);
        return Term::compound(t.text, std::move(args));
      }
      case Tok::LBracket: {
        bump();
        std::vector<Term> elems;
        if (cur_.kind != Tok::RBracket) {
          elems.push_back(term());
          while (cur_.kind == Tok::Comma) {
            bump();
            elems.push_back(term());
          }
        }
        if (cur_.kind == Tok::Bar) throw ParseError(cur_.line, cur_.column, "list tails '|' are not supported");
        expect(Tok::RBracket);
        return Term::list(std::move(elems));
      }
      default:
        throw ParseError(t.line, t.column, std::string("expected a term, found ") + describe(t.kind));
    }
  }

  Atom literal() {
    Token at = cur_;
    Term t = term();
    if (!t.is_constant() && !t.is_compound()) {
      throw ParseError(at.line, at.column, "expected an atom, found " + t.str());
    }
    return Atom::from_term(t);
  }

  bool at_end() const { return cur_.kind == Tok::End; }
  bool at(Tok k) const { return cur_.kind == k; }
  void bump() { cur_ = lex_.next(); }
  void expect(Tok k) {
    if (cur_.kind != k) {
      throw ParseError(cur_.line, cur_.column,
                       std::string("expected ") + describe(k) + ", found " + describe(cur_.kind));
    }
    bump();
  }
  const Token& current() const { return cur_; }

 private:
  void directive(SourceProgram& p) {
    Token start = cur_;
    bump();
    Atom d = literal();
    expect(Tok::Dot);
    if (d.predicate != "set_index_range" || d.arity() != 2) {
      throw ParseError(start.line, start.column, "unsupported directive " + d.str());
    }
    const Term& idx = d.args[0];
    const Term& n = d.args[1];
    if (!idx.is_constant()) {
      throw ParseError(start.line, start.column, "set_index_range: index must be a constant");
    }
    if (!n.is_integer() || n.value() < 1) {
      throw ParseError(start.line, start.column, "set_index_range: size must be a positive integer");
    }
    auto size = static_cast<std::size_t>(n.value());
    for (const auto& r : p.range_decls) {
      if (r.index != idx.name()) continue;
      if (r.size != size) {
        throw ParseError(start.line, start.column,
                         "duplicate range for index " + idx.name() + " with a different size (" +
                             std::to_string(r.size) + " vs " + std::to_string(size) + ")");
      }
      return;
    }
    p.range_decls.push_back({idx.name(), size});
  }

  void clause(SourceProgram& p) {
    Token start = cur_;
    Atom head = literal();
    std::vector<Atom> body;
    if (cur_.kind == Tok::Neck) {
      bump();
      body.push_back(literal());
      while (cur_.kind == Tok::Comma) {
        bump();
        body.push_back(literal());
      }
    }
    expect(Tok::Dot);

    if (is_tensor_literal(head) || is_operator_literal(head) ||
        (head.predicate == "set_index_range" && head.arity() == 2)) {
      throw ParseError(start.line, start.column,
                       "reserved predicate " + head.indicator() + " in clause head");
    }
    if (head.predicate == "index_list" && head.arity() == 2) {
      if (!body.empty()) throw ParseError(start.line, start.column, "index_list/2 must be a fact");
      p.index_decls.push_back(index_decl(head, start));
      return;
    }
    p.clauses.push_back(Clause{std::move(head), std::move(body)});
  }

  static IndexDeclaration index_decl(const Atom& head, const Token& at) {
    IndexDeclaration d;
    d.pattern = head.args[0];
    if (!d.pattern.is_constant() && !d.pattern.is_compound()) {
      throw ParseError(at.line, at.column, "index_list: pattern must be an atom, got " + d.pattern.str());
    }
    const Term& lists = head.args[1];
    if (!lists.is_list() || lists.args().empty()) {
      throw ParseError(at.line, at.column, "index_list: expected a nonempty list of index lists");
    }
    for (const auto& inner : lists.args()) {
      // An empty index list declares a scalar tensor.
      if (!inner.is_list()) {
        throw ParseError(at.line, at.column, "index_list: each index list must be a list, got " + inner.str());
      }
      std::vector<std::string> idx;
      for (const auto& s : inner.args()) {
        if (!s.is_constant()) {
          throw ParseError(at.line, at.column, "index_list: index symbols must be constants, got " + s.str());
        }
        idx.push_back(s.name());
      }
      d.index_lists.push_back(std::move(idx));
    }
    return d;
  }

  Lexer lex_;
  Token cur_;
  std::size_t anon_ = 0;
};

}  // namespace

SourceProgram parse_program(std::string_view source) { return Parser(source).program(); }

SourceProgram load_program(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open program file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  if (p.at(Tok::Dot)) p.bump();
  if (!p.at_end()) {
    throw ParseError(p.current().line, p.current().column, "unexpected text after term");
  }
  return t;
}

Atom parse_atom(std::string_view text) {
  Term t = parse_term(text);
  if (!t.is_constant() && !t.is_compound()) throw ParseError(1, 1, "expected an atom, got " + t.str());
  return Atom::from_term(t);
}

std::vector<Atom> parse_atoms(std::string_view text) {
  Parser p(text);
  std::vector<Atom> out;
  while (!p.at_end()) {
    out.push_back(p.literal());
    p.expect(Tok::Dot);
  }
  return out;
}

std::string print_program(const SourceProgram& p) {
  std::string out;
  for (const auto& d : p.index_decls) {
    out += "index_list(" + d.pattern.str() + ",[";
    for (std::size_t i = 0; i < d.index_lists.size(); ++i) {
      if (i) out += ',';
      out += '[';
      for (std::size_t j = 0; j < d.index_lists[i].size(); ++j) {
        if (j) out += ',';
        out += quote_symbol(d.index_lists[i][j]);
      }
      out += ']';
    }
    out += "]).\n";
  }
  for (const auto& r : p.range_decls) {
    out += ":- set_index_range(" + quote_symbol(r.index) + "," + std::to_string(r.size) + ").\n";
  }
  for (const auto& c : p.clauses) out += c.str() + "\n";
  return out;
}

}  // namespace tenlog
