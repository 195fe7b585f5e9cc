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

#include "json.hpp"
#include "support/run.hpp"
#include "tenlog/checkpoint.hpp"
#include "tenlog/compile.hpp"
#include "tenlog/evaluate.hpp"
#include "tenlog/explain.hpp"
#include "tenlog/syntax.hpp"

using namespace tenlog;
using support::quote;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const char* kToy =
    "index_list(v(_),[[i]]).\nindex_list(r(_),[[i]]).\n:- set_index_range(i,2).\n"
    "rel(S,R,O) :- tensor(v(S),[i]), tensor(v(O),[i]), tensor(r(R),[i]).\n";

const char* kLoop = "index_list(half,[[]]).\np :- tensor(half,[]).\np :- tensor(half,[]), p.\n";

const char* kRankToy =
    "index_list(v(_),[[i]]).\nindex_list(r(_),[[i]]).\nindex_list(v_all,[[o,i]]).\n"
    ":- set_index_range(i,1).\n:- set_index_range(o,4).\n"
    "rel(S,R,O) :- tensor(v(S),[i]), tensor(v_all,[o,i]), tensor(r(R),[i]).\n";

TensorKey key(const std::string& atom, std::vector<std::string> idx) { return {parse_term(atom), std::move(idx)}; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("tenlog_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  support::RunResult cli(const std::string& args) { return support::run(TENLOG_CLI, args, dir_ / "io"); }
  std::string file(const std::string& name, const std::string& text) {
    support::write_file(dir_ / name, text);
    return quote((dir_ / name).string());
  }
  std::string path(const std::string& name) const { return quote((dir_ / name).string()); }
  static std::string program(const std::string& name) {
    return quote(std::string(TENLOG_SOURCE_DIR) + "/programs/" + name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExplainSimpleProgram) {
  const auto r = cli("explain --emit json --program " + program("distmult_simple.tpr") + " --goal 'rel(s0,r0,o0)'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["nodes"].size(), 1u);
}

TEST_F(Cli, ExitCodes) {
  const auto unprovable = cli("explain --program " + file("p.tpr", "p :- q.\n") + " --goal p");
  EXPECT_EQ(unprovable.code, 1);
  EXPECT_FALSE(unprovable.err.empty());
  EXPECT_EQ(cli("explain --program " + path("missing.tpr") + " --goal p").code, 2);
  EXPECT_EQ(cli("explain --program " + file("bad.tpr", "p :- ") + " --goal p").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("eval --program " + file("q.tpr", "a.\n") + " --goal a --jobs 0").code, 2);
}

TEST_F(Cli, EvalFactIsOne) {
  const auto r = cli("eval --emit json --program " + file("a.tpr", "a.\n") + " --goal a");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["values"][0].get<double>(), 1.0);
}

TEST_F(Cli, EvalToyWithCheckpoint) {
  ParamStore s({{"i", 2}}, 0);
  s.set(key("v(s)", {"i"}), DenseTensor::vector({1, 2}));
  s.set(key("r(r)", {"i"}), DenseTensor::vector({1, 1}));
  s.set(key("v(o)", {"i"}), DenseTensor::vector({3, 1}));
  save_checkpoint(s, (dir_ / "ck").string());
  const auto r = cli("eval --program " + file("toy.tpr", kToy) + " --goal 'rel(s,r,o)' --checkpoint " + path("ck"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("value: 5\n"), std::string::npos) << r.out;
}

TEST_F(Cli, EvalCyclicReportsIterations) {
  ParamStore s({}, 0);
  s.set(key("half", {}), DenseTensor::scalar(0.5));
  save_checkpoint(s, (dir_ / "ck").string());
  const auto r = cli("eval --emit json --program " + file("loop.tpr", kLoop) + " --goal p --checkpoint " + path("ck"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["values"][0].get<double>(), 1.0, 1e-8);
  EXPECT_GT(j["iterations"].get<int>(), 0);
  EXPECT_LT(j["iterations"].get<int>(), 100);
}

TEST_F(Cli, CompileRoundTripMatchesInProcess) {
  const std::string prog = std::string(TENLOG_SOURCE_DIR) + "/programs/synthetic_kg.tpr";
  const auto c = cli("compile --emit json --program " + quote(prog) + " --goal 'rel(e1,r2,e3)'");
  ASSERT_EQ(c.code, 0) << c.err;
  support::write_file(dir_ / "eqs.json", c.out);
  const auto e = cli("eval --emit json --seed 3 --equations " + path("eqs.json"));
  ASSERT_EQ(e.code, 0) << e.err;
  const auto got = json::parse(e.out)["values"].get<std::vector<double>>();

  const auto p = load_program(prog);
  const auto eqs = compile(build_explanation_graph(p, parse_atom("rel(e1,r2,e3)")), p.ranges());
  ParamStore params(p.ranges(), 3);
  for (const auto& k : param_keys(eqs)) params.ensure(k);
  const auto want = forward(eqs, params).value(eqs.root);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-12);
}

TEST_F(Cli, TrainRejectsGoalWithData) {
  const auto r = cli("train --program " + file("toy.tpr", kToy) + " --goal 'rel(s,r,o)' --data " +
                     file("d.txt", "rel(s,r,o).\n") + " --checkpoint " + path("ck"));
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, TrainZeroEpochsWritesCheckpoint) {
  const auto r = cli("train --program " + file("toy.tpr", kToy) + " --data " +
                     file("d.txt", "rel(s,r,o).\nrel(o,r,s).\n") + " --data-format goals --epochs 0 --checkpoint " +
                     path("ck"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "ck" / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir_ / "ck" / "weights.bin"));
  EXPECT_EQ(support::read_file(dir_ / "ck" / "loss.csv"), "epoch,mean_loss\n");
  EXPECT_NE(r.out.find("\"seed\":0"), std::string::npos);
}

TEST_F(Cli, SyntheticTrainingLowersLoss) {
  ASSERT_EQ(support::run(TENLOG_SYNTHKG, "--out " + path("kg") + " --seed 0", dir_ / "io").code, 0);
  const auto r = cli("train --program " + quote(std::string(TENLOG_SOURCE_DIR) + "/programs/synthetic_kg.tpr") +
                     " --data " + path("kg/train.tsv") + " --epochs 15 --neg 10 --lambda 1e-5 --checkpoint " +
                     path("ck"));
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(support::read_file(dir_ / "ck" / "loss.csv"));
  std::string line;
  std::getline(csv, line);
  std::vector<double> curve;
  while (std::getline(csv, line)) curve.push_back(std::stod(line.substr(line.find(',') + 1)));
  ASSERT_EQ(curve.size(), 15u);
  EXPECT_LT(curve.back(), curve.front());
  const auto rank = cli("rank --emit json --program " +
                        quote(std::string(TENLOG_SOURCE_DIR) + "/programs/synthetic_kg.tpr") + " --checkpoint " +
                        path("ck") + " --data " + path("kg/test.tsv"));
  ASSERT_EQ(rank.code, 0) << rank.err;
  const auto j = json::parse(rank.out);
  EXPECT_GT(j["num_queries"].get<int>(), 0);
  EXPECT_EQ(j["protocol"], "raw");
}

TEST_F(Cli, RankHandSetCheckpoint) {
  ParamStore s({{"i", 1}, {"o", 4}}, 0);
  s.set(key("v(a)", {"i"}), DenseTensor::vector({1}));
  s.set(key("r(r)", {"i"}), DenseTensor::vector({1}));
  s.set(key("v_all", {"o", "i"}), DenseTensor({4, 1}, std::vector<double>{4, 3, 2, 1}));
  save_checkpoint(s, (dir_ / "ck").string(), {Vocab({"a", "b", "c", "d"}), Vocab({"r"}), 2, "rel"});
  const auto prog = file("rank.tpr", kRankToy);
  const auto r = cli("rank --emit json --program " + prog + " --checkpoint " + path("ck") + " --data " +
                     file("test.tsv", "a\tr\ta\na\tr\tb\na\tr\td\n"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["mrr"].get<double>(), 0.58333333333333333, 1e-12);
  EXPECT_NEAR(j["hits"]["1"].get<double>(), 1.0 / 3.0, 1e-12);

  const auto empty = cli("rank --program " + prog + " --checkpoint " + path("ck") + " --data " + file("e.tsv", ""));
  EXPECT_EQ(empty.code, 2);
  EXPECT_NE(empty.err.find("no queries"), std::string::npos);
}
