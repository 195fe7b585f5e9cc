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

#include "tenlog/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tenlog/error.hpp"
#include "tenlog/syntax.hpp"

namespace tenlog {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kFormatVersion = "1";

void put_f32(std::string& out, double x) {
  const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(x));
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

double get_f32(const unsigned char* p) {
  std::uint32_t bits = 0;
  for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(p[b]) << (8 * b);
  return static_cast<double>(std::bit_cast<float>(bits));
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot write " + p.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("short write to " + p.string());
}

const char* scheme_name(InitScheme s) { return s == InitScheme::Zeros ? "zeros" : "normal"; }

}  // namespace

void save_checkpoint(const ParamStore& params, const std::string& dir, const CheckpointMeta& meta) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CheckpointError("cannot create checkpoint directory " + dir + ": " + ec.message());

  std::string blob;
  json entries = json::array();
  for (const auto& [key, entry] : params.entries()) {
    const std::size_t offset = blob.size();
    for (double x : entry.value.data()) put_f32(blob, x);
    entries.push_back({{"name", key.atom.str()},
                       {"indices", key.indices},
                       {"shape", entry.value.shape()},
                       {"dtype", "f32"},
                       {"offset", offset},
                       {"length", blob.size() - offset},
                       {"trainable", entry.trainable}});
  }
  json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["seed"] = {{"seed", params.seed()}, {"init", scheme_name(params.scheme())}};
  manifest["ranges"] = params.ranges();
  manifest["entries"] = entries;
  manifest["entities"] = meta.entities.symbols();
  manifest["relations"] = meta.relations.symbols();
  manifest["predicate"] = meta.predicate;
  manifest["label_arg"] = meta.label_arg ? json(*meta.label_arg) : json(nullptr);
  write_file(fs::path(dir) / "weights.bin", blob);
  write_file(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& dir, const std::optional<std::map<std::string, std::size_t>>& ranges) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw CheckpointError("checkpoint directory not found: " + dir);
  json manifest;
  try {
    manifest = json::parse(read_file(root / "manifest.json"));
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("corrupt manifest: ") + e.what());
  }
  const std::string blob = read_file(root / "weights.bin");
  try {
    if (manifest.at("format_version").get<std::string>() != kFormatVersion) {
      throw CheckpointError("unsupported checkpoint format " + manifest.at("format_version").dump());
    }
    const auto stored = manifest.at("ranges").get<std::map<std::string, std::size_t>>();
    if (ranges) {
      for (const auto& [index, size] : stored) {
        auto it = ranges->find(index);
        if (it != ranges->end() && it->second != size) {
          throw CheckpointError("range mismatch for index " + index + ": checkpoint has " + std::to_string(size) +
                                ", program has " + std::to_string(it->second));
        }
      }
    }
    auto merged = stored;
    if (ranges) {
      for (const auto& [index, size] : *ranges) merged.emplace(index, size);
    }
    const auto& seed = manifest.at("seed");
    const InitScheme scheme = seed.at("init").get<std::string>() == "zeros" ? InitScheme::Zeros : InitScheme::Normal;
    Checkpoint ck{ParamStore(merged, seed.at("seed").get<std::uint64_t>(), scheme), {}};

    std::size_t total = 0;
    for (const auto& e : manifest.at("entries")) total += e.at("length").get<std::size_t>();
    if (total != blob.size()) {
      throw CheckpointError("blob length mismatch: manifest lists " + std::to_string(total) + " bytes, weights.bin has " +
                            std::to_string(blob.size()));
    }
    for (const auto& e : manifest.at("entries")) {
      if (e.at("dtype").get<std::string>() != "f32") throw CheckpointError("unsupported dtype " + e.at("dtype").dump());
      TensorKey key{parse_term(e.at("name").get<std::string>()), e.at("indices").get<std::vector<std::string>>()};
      const auto shape = e.at("shape").get<std::vector<std::size_t>>();
      const auto offset = e.at("offset").get<std::size_t>();
      const auto length = e.at("length").get<std::size_t>();
      if (length != 4 * element_count(shape) || offset + length > blob.size()) {
        throw CheckpointError("blob length mismatch for " + key.str());
      }
      if (shape != ck.params.shape_of(key)) {
        throw CheckpointError("range mismatch for " + key.str() + ": stored shape " + shape_str(shape) +
                              ", expected " + shape_str(ck.params.shape_of(key)));
      }
      std::vector<double> data(element_count(shape));
      const auto* p = reinterpret_cast<const unsigned char*>(blob.data()) + offset;
      for (std::size_t k = 0; k < data.size(); ++k) data[k] = get_f32(p + 4 * k);
      ck.params.set(key, DenseTensor(shape, std::move(data)), e.value("trainable", true));
    }
    ck.meta.entities = Vocab(manifest.value("entities", std::vector<std::string>{}));
    ck.meta.relations = Vocab(manifest.value("relations", std::vector<std::string>{}));
    ck.meta.predicate = manifest.value("predicate", std::string{});
    if (manifest.contains("label_arg") && !manifest.at("label_arg").is_null()) {
      ck.meta.label_arg = manifest.at("label_arg").get<std::size_t>();
    }
    return ck;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("corrupt manifest: ") + e.what());
  } catch (const ParseError& e) {
    throw CheckpointError(std::string("corrupt manifest: bad tensor name: ") + e.what());
  }
}

}  // namespace tenlog
