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
#include <vector>

namespace tenlog {

/// Dense ids in first-insertion order.
class Vocab {
 public:
  Vocab() = default;
  explicit Vocab(const std::vector<std::string>& symbols) {
    for (const auto& s : symbols) add(s);
  }

  std::size_t add(const std::string& symbol) {
    auto [it, inserted] = ids_.try_emplace(symbol, symbols_.size());
    if (inserted) symbols_.push_back(symbol);
    return it->second;
  }
  std::optional<std::size_t> find(const std::string& symbol) const {
    auto it = ids_.find(symbol);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const std::string& symbol) const { return ids_.count(symbol) != 0; }
  const std::string& symbol(std::size_t id) const { return symbols_.at(id); }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.symbols_ == b.symbols_; }

 private:
  std::map<std::string, std::size_t> ids_;
  std::vector<std::string> symbols_;
};

}  // namespace tenlog
