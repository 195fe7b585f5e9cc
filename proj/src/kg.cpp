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

#include "tenlog/kg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "tenlog/dataset.hpp"
#include "tenlog/error.hpp"

namespace tenlog {

std::vector<TripleRow> read_triples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open triple file " + path);
  std::vector<TripleRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    TripleRow row;
    std::size_t start = 0;
    std::size_t field = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      if (field == 3) {
        field = 4;
        break;
      }
      row[field++] = line.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (field != 3 || row[0].empty() || row[1].empty() || row[2].empty()) {
      throw DataError(path + ":" + std::to_string(lineno) + ": expected subject<TAB>relation<TAB>object");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_triples(const std::string& path, const std::vector<TripleRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& r : rows) out << r[0] << '\t' << r[1] << '\t' << r[2] << '\n';
}

TripleSplit index_triples(const std::vector<TripleRow>& rows, const Vocab& entities, const Vocab& relations,
                          UnseenPolicy policy, const std::string& source) {
  TripleSplit split;
  for (const auto& r : rows) {
    auto s = entities.find(r[0]);
    auto p = relations.find(r[1]);
    auto o = entities.find(r[2]);
    if (!s || !p || !o) {
      if (policy == UnseenPolicy::Skip) {
        ++split.skipped;
        continue;
      }
      const std::string& what = !s ? r[0] : !p ? r[1] : r[2];
      throw DataError(source + ": " + what + " does not occur in the training split");
    }
    split.triples.push_back({*s, *p, *o});
  }
  return split;
}

TripleStore make_store(const std::map<std::string, std::vector<TripleRow>>& splits, UnseenPolicy policy) {
  auto train = splits.find("train");
  if (train == splits.end() || train->second.empty()) throw DataError("empty train split");
  TripleStore store;
  for (const auto& r : train->second) {
    store.entities.add(r[0]);
    store.relations.add(r[1]);
    store.entities.add(r[2]);
  }
  for (const auto& [name, rows] : splits) {
    store.splits[name] = index_triples(rows, store.entities, store.relations, policy, name);
  }
  return store;
}

TripleStore load_triples(const std::map<std::string, std::string>& split_paths, UnseenPolicy policy) {
  std::map<std::string, std::vector<TripleRow>> rows;
  for (const auto& [name, path] : split_paths) rows[name] = read_triples(path);
  return make_store(rows, policy);
}

std::vector<Atom> triples_to_goals(const std::vector<Triple>& triples, const Vocab& entities, const Vocab& relations,
                                   const std::string& predicate) {
  std::vector<Atom> goals;
  goals.reserve(triples.size());
  for (const auto& t : triples) {
    goals.push_back(Atom{predicate,
                         {term_of(entities.symbol(t[0])), term_of(relations.symbol(t[1])), term_of(entities.symbol(t[2]))}});
  }
  return goals;
}

double rank_objects(std::span<const double> scores, std::size_t true_id) {
  if (true_id >= scores.size()) {
    throw DataError("true id " + std::to_string(true_id) + " out of range for " + std::to_string(scores.size()) +
                    " candidates");
  }
  const double target = scores[true_id];
  std::size_t greater = 0;
  std::size_t ties = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (k == true_id) continue;
    if (scores[k] > target) {
      ++greater;
    } else if (scores[k] == target) {
      ++ties;
    }
  }
  return 1.0 + static_cast<double>(greater) + static_cast<double>(ties) / 2.0;
}

RankingReport make_report(std::vector<double> ranks, const std::vector<std::size_t>& ks) {
  RankingReport r;
  r.ranks = std::move(ranks);
  for (std::size_t k : ks) r.hits[k] = 0.0;
  if (r.ranks.empty()) return r;
  double recip = 0.0;
  for (double rank : r.ranks) {
    recip += 1.0 / rank;
    for (auto& [k, h] : r.hits) h += std::ceil(rank) <= static_cast<double>(k) ? 1.0 : 0.0;
  }
  const auto n = static_cast<double>(r.ranks.size());
  r.mrr = recip / n;
  for (auto& [k, h] : r.hits) h /= n;
  return r;
}

nlohmann::json RankingReport::to_json() const {
  nlohmann::json hits_json = nlohmann::json::object();
  for (const auto& [k, h] : hits) hits_json[std::to_string(k)] = h;
  return {{"mrr", mrr}, {"hits", hits_json}, {"num_queries", ranks.size()}, {"skipped", skipped}};
}

std::string RankingReport::table() const {
  std::ostringstream out;
  char buf[64];
  out << "queries   " << ranks.size() << '\n';
  std::snprintf(buf, sizeof buf, "MRR       %.4f\n", mrr);
  out << buf;
  for (const auto& [k, h] : hits) {
    std::snprintf(buf, sizeof buf, "HIT@%-5zu %.4f\n", k, h);
    out << buf;
  }
  if (skipped) out << "skipped   " << skipped << '\n';
  return out.str();
}

RankingReport evaluate_ranking(GoalModel& model, ParamStore& params, const std::vector<Atom>& queries,
                               const RankOptions& options) {
  if (!model.label_arg()) throw CompileError("program signature not vector-over-entities: ranking needs a label argument");
  const std::size_t n_entities = model.entities().size();
  for (const auto& q : queries) model.prepare(q, params);

  // Filtered protocol: known object ids per query, keyed without the label.
  std::map<std::string, std::set<std::size_t>> known;
  if (options.filtered) {
    auto add = [&](const Atom& g) {
      auto id = model.entities().find(symbol_of(g.args.at(*model.label_arg())));
      if (!id) return;
      Atom k = g;
      k.args[*model.label_arg()] = Term::constant("$label");
      known[k.str()].insert(*id);
    };
    for (const auto& g : options.known) add(g);
    for (const auto& g : queries) add(g);
  }

  std::vector<double> ranks(queries.size());
  std::exception_ptr error;
  const GoalModel& cmodel = model;
  const ParamStore& cparams = params;
  const auto n = static_cast<std::int64_t>(queries.size());
  ForwardOptions fopts;
  fopts.exec = Execution::Serial;
#pragma omp parallel for schedule(dynamic, 8) if (options.exec == Execution::Parallel && n > 1)
  for (std::int64_t k = 0; k < n; ++k) {
    try {
      const Atom& q = queries[static_cast<std::size_t>(k)];
      const EquationSet& eqs = cmodel.compiled(q);
      const EvalTrace trace = forward(eqs, cparams, fopts, cmodel.registry());
      std::vector<double> scores(trace.value(eqs.root).data().begin(),
                                 trace.value(eqs.root).data().begin() + static_cast<std::ptrdiff_t>(n_entities));
      const std::size_t truth = cmodel.label_id(q);
      if (options.filtered) {
        Atom key = q;
        key.args[*cmodel.label_arg()] = Term::constant("$label");
        auto it = known.find(key.str());
        if (it != known.end()) {
          for (std::size_t id : it->second) {
            if (id != truth) scores[id] = -std::numeric_limits<double>::infinity();
          }
        }
      }
      ranks[static_cast<std::size_t>(k)] = rank_objects(scores, truth);
    } catch (...) {
#pragma omp critical(tenlog_rank_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return make_report(std::move(ranks), options.ks);
}

std::map<std::string, std::vector<TripleRow>> make_block_kg(std::uint64_t seed) {
  constexpr std::size_t kEntities = 50;
  constexpr std::size_t kBlocks = 5;
  constexpr std::size_t kRelations = 5;
  constexpr std::size_t kBlockSize = kEntities / kBlocks;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> members(kEntities);
  std::iota(members.begin(), members.end(), 0);
  std::shuffle(members.begin(), members.end(), rng);
  std::vector<std::size_t> hubs(kEntities);
  std::iota(hubs.begin(), hubs.end(), 0);
  std::shuffle(hubs.begin(), hubs.end(), rng);

  auto ent = [](std::size_t e) { return "e" + std::to_string(e); };
  std::map<std::string, std::vector<TripleRow>> out{{"train", {}}, {"test", {}}};
  for (std::size_t b = 0; b < kBlocks; ++b) {
    std::size_t single = 0;
    for (std::size_t r = 0; r < kRelations; ++r) {
      const std::size_t k = r == b ? 6 : 1;
      std::vector<std::size_t> cell;
      for (std::size_t h = 0; h < k; ++h) {
        cell.push_back(hubs.back());
        hubs.pop_back();
      }
      for (std::size_t j = 0; j < kBlockSize; ++j) {
        const std::size_t s = members[b * kBlockSize + j];
        // Rotating half of each single-hub cell, so every member keeps
        // training evidence for most relations.
        const bool held = k == 1 && (j + single * 5 + (single / 2) * 2) % kBlockSize < 5;
        for (std::size_t o : cell) out[held ? "test" : "train"].push_back({ent(s), "r" + std::to_string(r), ent(o)});
      }
      if (k == 1) ++single;
    }
  }
  return out;
}

}  // namespace tenlog
