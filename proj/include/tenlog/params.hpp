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
#include <set>
#include <string>
#include <vector>

#include "tenlog/syntax.hpp"
#include "tenlog/tensor.hpp"
#include "tenlog/tensor_key.hpp"

namespace tenlog {

enum class InitScheme { Normal, Zeros };

struct ParamEntry {
  DenseTensor value;
  bool trainable = true;

  friend bool operator==(const ParamEntry&, const ParamEntry&) = default;
};

class ParamStore {
 public:
  ParamStore() = default;
  ParamStore(std::map<std::string, std::size_t> ranges, std::uint64_t seed, InitScheme scheme = InitScheme::Normal)
      : ranges_(std::move(ranges)), seed_(seed), scheme_(scheme) {}

  const std::map<std::string, std::size_t>& ranges() const noexcept { return ranges_; }
  std::uint64_t seed() const noexcept { return seed_; }
  InitScheme scheme() const noexcept { return scheme_; }

  /// Shape implied by the key's index symbols.
  std::vector<std::size_t> shape_of(const TensorKey& key) const;

  bool contains(const TensorKey& key) const { return entries_.count(key) != 0; }
  const DenseTensor& at(const TensorKey& key) const;
  DenseTensor& at(const TensorKey& key);
  /// Throws ShapeError when the value does not match the index ranges.
  void set(const TensorKey& key, DenseTensor value, bool trainable = true);
  void set_trainable(const TensorKey& key, bool trainable);
  bool trainable(const TensorKey& key) const;
  /// Initializes the key from (seed, key) if absent. The value does not
  /// depend on creation order.
  const DenseTensor& ensure(const TensorKey& key);

  const std::map<TensorKey, ParamEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const ParamStore&, const ParamStore&) = default;

 private:
  std::map<std::string, std::size_t> ranges_;
  std::uint64_t seed_ = 0;
  InitScheme scheme_ = InitScheme::Normal;
  std::map<TensorKey, ParamEntry> entries_;
};

/// Deterministic initial value for one key: entries are independent normal
/// draws with mean 0 and standard deviation 1/sqrt(last-axis size), or zeros.
DenseTensor initial_value(const TensorKey& key, const std::vector<std::size_t>& shape, std::uint64_t seed,
                          InitScheme scheme);

/// Builds a store holding every key in `keys` plus every ground declaration.
/// Keys must match a declaration.
ParamStore init_params(const std::vector<IndexDeclaration>& decls, const std::map<std::string, std::size_t>& ranges,
                       const std::set<TensorKey>& keys, std::uint64_t seed, InitScheme scheme = InitScheme::Normal);

}  // namespace tenlog
