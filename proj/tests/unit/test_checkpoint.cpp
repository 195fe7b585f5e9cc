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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "support/oracles.hpp"
#include "tenlog/checkpoint.hpp"
#include "tenlog/error.hpp"
#include "tenlog/syntax.hpp"

using namespace tenlog;
namespace fs = std::filesystem;

namespace {

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tenlog_ckpt_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& sub) const { return (dir_ / sub).string(); }

  fs::path dir_;
};

ParamStore sample_store() {
  std::mt19937_64 rng(1);
  ParamStore s({{"i", 3}, {"o", 4}}, 9);
  s.set({parse_term("v(a)"), {"i"}}, oracle::random_tensor({3}, rng));
  s.set({parse_term("v('B c')"), {"i"}}, oracle::random_tensor({3}, rng));
  s.set({parse_term("all"), {"o", "i"}}, oracle::random_tensor({4, 3}, rng), false);
  s.set({parse_term("bias"), {}}, DenseTensor::scalar(0.1));
  return s;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_F(CheckpointTest, RoundTripToSinglePrecision) {
  const auto s = sample_store();
  CheckpointMeta meta{Vocab({"a", "b"}), Vocab({"r"}), 2, "rel"};
  save_checkpoint(s, path("c"), meta);
  const auto c = load_checkpoint(path("c"));
  EXPECT_EQ(c.meta, meta);
  EXPECT_EQ(c.params.seed(), 9u);
  ASSERT_EQ(c.params.size(), s.size());
  for (const auto& [k, e] : s.entries()) {
    const auto& got = c.params.at(k);
    ASSERT_EQ(got.shape(), e.value.shape());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], static_cast<double>(static_cast<float>(e.value[i])));
    EXPECT_EQ(c.params.trainable(k), e.trainable);
  }
}

TEST_F(CheckpointTest, SaveLoadSaveIsByteIdentical) {
  save_checkpoint(sample_store(), path("a"), {Vocab({"x"}), {}, std::nullopt, "rel"});
  const auto c = load_checkpoint(path("a"));
  save_checkpoint(c.params, path("b"), c.meta);
  EXPECT_EQ(slurp(path("a/manifest.json")), slurp(path("b/manifest.json")));
  EXPECT_EQ(slurp(path("a/weights.bin")), slurp(path("b/weights.bin")));
}

TEST_F(CheckpointTest, TruncatedBlob) {
  save_checkpoint(sample_store(), path("c"));
  fs::resize_file(path("c/weights.bin"), fs::file_size(path("c/weights.bin")) - 4);
  try {
    load_checkpoint(path("c"));
    FAIL();
  } catch (const CheckpointError& e) {
    EXPECT_NE(std::string(e.what()).find("blob length mismatch"), std::string::npos);
  }
}

TEST_F(CheckpointTest, RangeMismatch) {
  save_checkpoint(sample_store(), path("c"));
  EXPECT_NO_THROW(load_checkpoint(path("c"), std::map<std::string, std::size_t>{{"i", 3}, {"o", 4}}));
  try {
    load_checkpoint(path("c"), std::map<std::string, std::size_t>{{"i", 5}, {"o", 4}});
    FAIL();
  } catch (const CheckpointError& e) {
    EXPECT_NE(std::string(e.what()).find("range mismatch"), std::string::npos);
  }
}

TEST_F(CheckpointTest, CorruptManifest) {
  save_checkpoint(sample_store(), path("c"));
  std::ofstream(path("c/manifest.json")) << "{not json";
  EXPECT_THROW(load_checkpoint(path("c")), CheckpointError);
  EXPECT_THROW(load_checkpoint(path("missing")), CheckpointError);
}

TEST_F(CheckpointTest, ManifestFields) {
  save_checkpoint(sample_store(), path("c"));
  const auto j = nlohmann::json::parse(slurp(path("c/manifest.json")));
  EXPECT_EQ(j["format_version"], "1");
  ASSERT_FALSE(j["entries"].empty());
  for (const auto& e : j["entries"]) {
    EXPECT_EQ(e["dtype"], "f32");
    EXPECT_TRUE(e.contains("offset"));
    EXPECT_TRUE(e.contains("length"));
    EXPECT_TRUE(e.contains("indices"));
    EXPECT_TRUE(e.contains("shape"));
  }
  EXPECT_EQ(j["seed"]["seed"], 9);
}
