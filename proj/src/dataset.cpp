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

#include "tenlog/dataset.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tenlog/error.hpp"
#include "tenlog/syntax.hpp"

namespace tenlog {

GoalDataset parse_goals(const std::string& text) {
  GoalDataset d;
  d.goals = parse_atoms(text);
  for (const auto& g : d.goals) {
    if (!g.is_ground()) throw DataError("dataset goal is not ground: " + g.str());
  }
  return d;
}

GoalDataset load_goals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_goals(ss.str());
}

std::string symbol_of(const Term& t) {
  if (t.is_constant()) return t.name();
  if (t.is_integer()) return std::to_string(t.value());
  return t.str();
}

Term term_of(const std::string& symbol) {
  std::size_t k = !symbol.empty() && symbol[0] == '-' ? 1 : 0;
  bool digits = k < symbol.size() && symbol.size() - k <= 18;
  for (std::size_t i = k; digits && i < symbol.size(); ++i) digits = std::isdigit(static_cast<unsigned char>(symbol[i]));
  // Leading zeros and "-0" would not print back the same way.
  if (digits && symbol[k] == '0' && (symbol.size() - k > 1 || k == 1)) digits = false;
  if (digits) return Term::integer(std::stoll(symbol));
  return Term::constant(symbol);
}

Vocab entity_vocab(const std::vector<Atom>& goals, std::size_t object_arg) {
  Vocab v;
  for (const auto& g : goals) {
    if (g.args.empty() || object_arg >= g.arity()) throw DataError("goal " + g.str() + " has no object argument");
    v.add(symbol_of(g.args[0]));
    v.add(symbol_of(g.args[object_arg]));
  }
  return v;
}

}  // namespace tenlog
