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

// Writes the block-structured synthetic knowledge graph as TSV files.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "tenlog/error.hpp"
#include "tenlog/kg.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic 50-entity knowledge graph (train.tsv, test.tsv)"};
  std::string out = ".";
  std::uint64_t seed = 0;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    std::filesystem::create_directories(out);
    for (const auto& [split, rows] : tenlog::make_block_kg(seed)) {
      const auto path = (std::filesystem::path(out) / (split + ".tsv")).string();
      tenlog::write_triples(path, rows);
      std::cout << path << ' ' << rows.size() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
