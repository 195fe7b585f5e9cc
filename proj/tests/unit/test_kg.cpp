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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "tenlog/error.hpp"
#include "tenlog/kg.hpp"
#include "tenlog/syntax.hpp"
#include "tenlog/trainer.hpp"

using namespace tenlog;
namespace fs = std::filesystem;

namespace {

const char* kToy =
    "index_list(v(_),[[i]]).\nindex_list(r(_),[[i]]).\nindex_list(v_all,[[o,i]]).\n"
    ":- set_index_range(i,1).\n:- set_index_range(o,4).\n"
    "rel(S,R,O) :- tensor(v(S),[i]), tensor(v_all,[o,i]), tensor(r(R),[i]).\n";

TensorKey key(const std::string& atom, std::vector<std::string> idx) { return {parse_term(atom), std::move(idx)}; }

std::string temp_file(const std::string& name) {
  return (fs::temp_directory_path() / ("tenlog_kg_" + name)).string();
}

}  // namespace

TEST(Triples, SmallFileVocab) {
  const std::string p = temp_file("small.tsv");
  write_triples(p, {{"x", "likes", "y"}, {"y", "likes", "x"}, {"x", "likes", "x"}});
  const auto store = load_triples({{"train", p}}, UnseenPolicy::Error);
  EXPECT_EQ(store.entities.symbols(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(store.relations.symbols(), std::vector<std::string>{"likes"});
  EXPECT_EQ(store.splits.at("train").triples[1], (Triple{1, 0, 0}));
  fs::remove(p);
}

TEST(Triples, UnseenPolicy) {
  const std::map<std::string, std::vector<TripleRow>> splits{{"train", {{"a", "r", "b"}}},
                                                            {"test", {{"a", "r", "z"}, {"b", "r", "a"}}}};
  const auto store = make_store(splits, UnseenPolicy::Skip);
  EXPECT_EQ(store.splits.at("test").skipped, 1u);
  EXPECT_EQ(store.splits.at("test").triples.size(), 1u);
  EXPECT_THROW(make_store(splits, UnseenPolicy::Error), DataError);
  EXPECT_THROW(make_store({{"train", {}}}, UnseenPolicy::Skip), DataError);
}

TEST(Triples, MalformedLine) {
  const std::string p = temp_file("bad.tsv");
  {
    std::ofstream out(p);
    out << "a\tr\tb\nonly\ttwo\n";
  }
  EXPECT_THROW(read_triples(p), DataError);
  fs::remove(p);
}

TEST(Rank, Examples) {
  const std::vector<double> a{0.9, 0.1, 0.5};
  EXPECT_EQ(rank_objects(a, 0), 1.0);
  EXPECT_EQ(rank_objects(std::vector<double>{0.5, 0.5}, 1), 1.5);
  EXPECT_EQ(rank_objects(std::vector<double>{0.1, 0.9, 0.5}, 0), 3.0);
  EXPECT_THROW(rank_objects(a, 3), DataError);
}

TEST(Rank, MonotoneTransformInvariance) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(12), e(12);
    for (auto& x : s) x = std::round(u(rng) * 2) / 2;  // some ties
    for (std::size_t k = 0; k < s.size(); ++k) e[k] = std::exp(s[k]) * 3 + 1;
    for (std::size_t id = 0; id < s.size(); ++id) EXPECT_EQ(rank_objects(s, id), rank_objects(e, id));
  }
}

TEST(Report, Arithmetic) {
  const auto r = make_report({1, 2, 4});
  EXPECT_NEAR(r.mrr, (1 + 0.5 + 0.25) / 3, 1e-15);
  EXPECT_NEAR(r.hits.at(1), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(r.hits.at(10), 1.0);
  const auto ones = make_report({1, 1});
  EXPECT_EQ(ones.mrr, 1.0);
  EXPECT_EQ(ones.hits.at(1), 1.0);
  const auto tie = make_report({1.5});
  EXPECT_EQ(tie.hits.at(1), 0.0);
  EXPECT_NEAR(tie.mrr, 1 / 1.5, 1e-15);
  const auto j = r.to_json();
  EXPECT_EQ(j["num_queries"], 3);
  EXPECT_TRUE(j["hits"].contains("1"));
  EXPECT_TRUE(j["hits"].contains("10"));
}

TEST(Report, MetricsAreConsistent) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(1, 30);
  std::vector<double> ranks(200);
  for (auto& x : ranks) x = d(rng);
  const auto r = make_report(ranks);
  EXPECT_LE(r.hits.at(1), r.hits.at(10));
  EXPECT_GE(r.mrr, r.hits.at(1));
}

TEST(Ranking, HandSetParamsGiveExpectedRanks) {
  GoalModel model(parse_program(kToy), Vocab({"a", "b", "c", "d"}), 2);
  ParamStore params(model.program().ranges(), 0);
  params.set(key("v(a)", {"i"}), DenseTensor::vector({1}));
  params.set(key("r(r)", {"i"}), DenseTensor::vector({1}));
  params.set(key("v_all", {"o", "i"}), DenseTensor({4, 1}, std::vector<double>{4, 3, 2, 1}));
  const auto queries = parse_atoms("rel(a,r,a).\nrel(a,r,b).\nrel(a,r,d).\n");
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    RankOptions opt;
    opt.exec = exec;
    const auto r = evaluate_ranking(model, params, queries, opt);
    EXPECT_EQ(r.ranks, (std::vector<double>{1, 2, 4}));
    EXPECT_NEAR(r.mrr, 0.58333333333333333, 1e-15);
  }
  RankOptions filtered;
  filtered.filtered = true;
  filtered.known = queries;
  EXPECT_EQ(evaluate_ranking(model, params, queries, filtered).ranks, (std::vector<double>{1, 1, 2}));
}

TEST(Ranking, ScalarModelRejected) {
  GoalModel model(parse_program(kToy), Vocab({"a"}), std::nullopt);
  ParamStore params(model.program().ranges(), 0);
  EXPECT_THROW(evaluate_ranking(model, params, parse_atoms("rel(a,r,a).\n")), CompileError);
}

TEST(BlockKg, ShapeAndDeterminism) {
  const auto a = make_block_kg(0);
  EXPECT_EQ(a, make_block_kg(0));
  EXPECT_NE(a, make_block_kg(1));
  const auto store = make_store(a, UnseenPolicy::Error);
  EXPECT_EQ(store.entities.size(), 50u);
  EXPECT_EQ(store.relations.size(), 5u);
  EXPECT_NEAR(static_cast<double>(a.at("train").size()), 400.0, 40.0);
  EXPECT_NEAR(static_cast<double>(a.at("test").size()), 100.0, 20.0);
}
