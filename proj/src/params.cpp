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

#include "tenlog/params.hpp"

#include <cmath>
#include <random>

#include "tenlog/error.hpp"
#include "tenlog/validate.hpp"

namespace tenlog {

std::vector<std::size_t> ParamStore::shape_of(const TensorKey& key) const {
  std::vector<std::size_t> shape;
  for (const auto& i : key.indices) {
    auto it = ranges_.find(i);
    if (it == ranges_.end()) throw ShapeError("index " + i + " of " + key.str() + " has no range");
    shape.push_back(it->second);
  }
  return shape;
}

const DenseTensor& ParamStore::at(const TensorKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("missing parameter " + key.str());
  return it->second.value;
}

DenseTensor& ParamStore::at(const TensorKey& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("missing parameter " + key.str());
  return it->second.value;
}

void ParamStore::set(const TensorKey& key, DenseTensor value, bool trainable) {
  const auto shape = shape_of(key);
  if (value.shape() != shape) {
    throw ShapeError("parameter " + key.str() + " needs shape " + shape_str(shape) + ", got " +
                     shape_str(value.shape()));
  }
  entries_.insert_or_assign(key, ParamEntry{std::move(value), trainable});
}

void ParamStore::set_trainable(const TensorKey& key, bool trainable) {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("missing parameter " + key.str());
  it->second.trainable = trainable;
}

bool ParamStore::trainable(const TensorKey& key) const {
  auto it = entries_.find(key);
  return it != entries_.end() && it->second.trainable;
}

const DenseTensor& ParamStore::ensure(const TensorKey& key) {
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second.value;
  const auto shape = shape_of(key);
  return entries_.emplace(key, ParamEntry{initial_value(key, shape, seed_, scheme_), true}).first->second.value;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

DenseTensor initial_value(const TensorKey& key, const std::vector<std::size_t>& shape, std::uint64_t seed,
                          InitScheme scheme) {
  DenseTensor t(shape);
  if (scheme == InitScheme::Zeros) return t;
  std::mt19937_64 rng(splitmix(seed ^ splitmix(fnv1a(key.str()))));
  const double sd = 1.0 / std::sqrt(static_cast<double>(shape.empty() ? 1 : shape.back()));
  std::normal_distribution<double> normal(0.0, sd);
  for (auto& x : t.data()) x = normal(rng);
  return t;
}

ParamStore init_params(const std::vector<IndexDeclaration>& decls, const std::map<std::string, std::size_t>& ranges,
                       const std::set<TensorKey>& keys, std::uint64_t seed, InitScheme scheme) {
  ParamStore store(ranges, seed, scheme);
  for (const auto& d : decls) {
    if (!d.pattern.is_ground()) continue;
    for (const auto& l : d.index_lists) store.ensure(TensorKey{d.pattern, l});
  }
  for (const auto& k : keys) {
    if (!find_declaration(decls, k.atom, k.indices)) throw ValidationError("undeclared tensor atom " + k.str());
    store.ensure(k);
  }
  return store;
}

}  // namespace tenlog
