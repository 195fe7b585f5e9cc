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

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenlog/einsum.hpp"
#include "tenlog/params.hpp"
#include "tenlog/term.hpp"
#include "tenlog/trainer.hpp"
#include "tenlog/vocab.hpp"

namespace tenlog {

using TripleRow = std::array<std::string, 3>;
using Triple = std::array<std::size_t, 3>;  // subject, relation, object ids

enum class UnseenPolicy { Error, Skip };

struct TripleSplit {
  std::vector<Triple> triples;
  /// Rows dropped under UnseenPolicy::Skip.
  std::size_t skipped = 0;
};

struct TripleStore {
  Vocab entities;
  Vocab relations;
  std::map<std::string, TripleSplit> splits;
};

/// Reads `subject<TAB>relation<TAB>object` rows. Throws DataError for
/// missing files and lines without exactly three fields.
std::vector<TripleRow> read_triples(const std::string& path);
void write_triples(const std::string& path, const std::vector<TripleRow>& rows);

/// Maps rows through fixed vocabularies.
TripleSplit index_triples(const std::vector<TripleRow>& rows, const Vocab& entities, const Vocab& relations,
                          UnseenPolicy policy, const std::string& source = "triples");

/// Builds the vocabularies from the "train" entry (subject then object, in
/// file order) and maps every other split through them.
TripleStore load_triples(const std::map<std::string, std::string>& split_paths, UnseenPolicy policy);
TripleStore make_store(const std::map<std::string, std::vector<TripleRow>>& splits, UnseenPolicy policy);

/// predicate(subject, relation, object) goals.
std::vector<Atom> triples_to_goals(const std::vector<Triple>& triples, const Vocab& entities, const Vocab& relations,
                                   const std::string& predicate);

/// 1 + #{strictly greater} + #{ties other than the true id} / 2.
double rank_objects(std::span<const double> scores, std::size_t true_id);

struct RankingReport {
  std::vector<double> ranks;
  double mrr = 0.0;
  /// Fraction of queries with ceil(rank) <= k.
  std::map<std::size_t, double> hits;
  std::size_t skipped = 0;

  nlohmann::json to_json() const;
  std::string table() const;
};

RankingReport make_report(std::vector<double> ranks, const std::vector<std::size_t>& ks = {1, 10});

struct RankOptions {
  /// Remove other known true objects of the same query from the candidates.
  bool filtered = false;
  /// Goals treated as known true for the filtered protocol.
  std::vector<Atom> known;
  Execution exec = Execution::Parallel;
  std::vector<std::size_t> ks = {1, 10};
};

/// Scores every entity with one forward pass per query and ranks the
/// query's true object. Needs a model with a label argument.
RankingReport evaluate_ranking(GoalModel& model, ParamStore& params, const std::vector<Atom>& queries,
                               const RankOptions& options = {});

/// Block-structured synthetic graph: 50 entities in 5 blocks of 10 and 5
/// relations. In block b, relation b links every member to 6 shared hubs and
/// every other relation links every member to 1 hub. Half of the members of
/// each single-hub cell are held out for "test"; the rest form "train"
/// (400 train and 100 test rows).
std::map<std::string, std::vector<TripleRow>> make_block_kg(std::uint64_t seed);

}  // namespace tenlog
