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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tenlog/checkpoint.hpp"
#include "tenlog/compile.hpp"
#include "tenlog/dataset.hpp"
#include "tenlog/error.hpp"
#include "tenlog/evaluate.hpp"
#include "tenlog/explain.hpp"
#include "tenlog/kg.hpp"
#include "tenlog/syntax.hpp"
#include "tenlog/trainer.hpp"
#include "tenlog/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tenlog;

namespace {

// Usage-level failure: bad flag combinations and unusable inputs.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string program;
  std::uint64_t seed = 0;
  std::string emit = "text";
  int jobs = 1;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string seconds(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceProgram load_checked(const std::string& path) {
  SourceProgram p = load_program(path);
  for (const auto& w : validate(p).warnings) std::cerr << "warning: " << w << '\n';
  return p;
}

std::string labels_str(const std::vector<std::string>& ls) {
  std::string out;
  for (std::size_t k = 0; k < ls.size(); ++k) out += (k ? "," : "") + ls[k];
  return out;
}

void print_graph_text(const ExplanationGraph& g) {
  for (const auto& scc : g.sccs) {
    for (const auto& goal : scc.goals) {
      const Node& n = g.node(goal);
      std::cout << goal << " <=>";
      for (std::size_t k = 0; k < n.disjuncts.size(); ++k) {
        std::cout << (k ? "\n    ; " : " ") << n.disjuncts[k].str();
      }
      std::cout << (scc.cyclic ? "   % cyclic\n" : "\n");
    }
  }
}

void print_equations_text(const EquationSet& eqs) {
  for (const auto& goal : eqs.evaluation_order()) {
    const auto& eq = eqs.equation(goal);
    std::cout << goal << " : " << eqs.signature(goal).str() << '\n';
    for (std::size_t t = 0; t < eq.terms.size(); ++t) {
      const auto& term = eq.terms[t];
      std::string body = "einsum[";
      for (std::size_t k = 0; k < term.einsum.inputs.size(); ++k) {
        body += (k ? ";" : "") + labels_str(term.einsum.inputs[k]);
      }
      body += "->" + labels_str(term.einsum.output) + "](";
      for (std::size_t k = 0; k < term.operands.size(); ++k) body += (k ? ", " : "") + term.operands[k].str();
      body += ")";
      for (auto it = term.operators.rbegin(); it != term.operators.rend(); ++it) body = *it + "(" + body + ")";
      std::cout << (t ? "  + " : "  = ") << body << '\n';
    }
  }
}

int cmd_explain(const Common& c, const std::string& goal_text) {
  const SourceProgram p = load_checked(c.program);
  const ExplanationGraph g = build_explanation_graph(p, parse_atom(goal_text));
  if (c.emit == "json") {
    std::cout << to_json(g).dump(2) << '\n';
  } else {
    print_graph_text(g);
  }
  return 0;
}

int cmd_compile(const Common& c, const std::string& goal_text) {
  const SourceProgram p = load_checked(c.program);
  const auto ranges = p.ranges();
  const EquationSet eqs = compile(build_explanation_graph(p, parse_atom(goal_text)), ranges);
  check_shapes(eqs, ranges);
  if (c.emit == "json") {
    std::cout << to_json(eqs).dump(2) << '\n';
  } else {
    print_equations_text(eqs);
  }
  return 0;
}

int cmd_eval(const Common& c, const std::string& goal_text, const std::string& equations_path,
             const std::string& checkpoint) {
  EquationSet eqs;
  std::map<std::string, std::size_t> ranges;
  if (!equations_path.empty()) {
    json j;
    try {
      j = json::parse(read_text(equations_path));
    } catch (const json::exception& e) {
      throw UsageError("cannot parse equations file " + equations_path + ": " + e.what());
    }
    eqs = equations_from_json(j);
    ranges = eqs.ranges;
    if (!c.program.empty()) {
      for (const auto& [i, n] : load_checked(c.program).ranges()) ranges[i] = n;
    }
  } else {
    const SourceProgram p = load_checked(c.program);
    ranges = p.ranges();
    eqs = compile(build_explanation_graph(p, parse_atom(goal_text)), ranges);
  }
  check_shapes(eqs, ranges);

  ParamStore params(ranges, c.seed);
  if (!checkpoint.empty()) params = load_checkpoint(checkpoint, ranges).params;
  for (const auto& k : param_keys(eqs)) {
    if (!params.contains(k) && !checkpoint.empty()) {
      std::cerr << "warning: " << k.str() << " is not in the checkpoint; using a seeded initial value\n";
    }
    params.ensure(k);
  }
  ForwardOptions opts;
  opts.exec = c.jobs > 1 ? Execution::Parallel : Execution::Serial;
  const EvalTrace trace = forward(eqs, params, opts);
  const DenseTensor& v = trace.value(eqs.root);
  const IndexSignature& sig = eqs.signature(eqs.root);
  if (c.emit == "json") {
    json out;
    out["goal"] = eqs.root;
    out["signature"] = {{"indices", sig.indices}, {"dims", sig.dims}};
    out["values"] = std::vector<double>(v.data().begin(), v.data().end());
    out["iterations"] = trace.total_iterations();
    out["residual"] = trace.residual;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "goal: " << eqs.root << '\n' << "signature: " << sig.str() << '\n';
    if (v.is_scalar()) {
      std::cout << "value: " << fmt(v.item()) << '\n';
    } else {
      std::cout << "values:";
      for (double x : v.data()) std::cout << ' ' << fmt(x);
      std::cout << '\n';
    }
    std::cout << "iterations: " << trace.total_iterations() << '\n';
  }
  return 0;
}

struct TrainArgs {
  std::string goal;
  std::string data;
  std::string data_format = "auto";
  std::string predicate = "rel";
  int label_arg = -1;
  std::string checkpoint;
  std::string loss_csv;
  std::string recipe;
  std::size_t epochs = 1;
  std::size_t batch_size = 32;
  double lr = 1e-3;
  double gamma = 1.0;
  double lambda = 0.0;
  std::size_t neg = 1;
  std::string loss = "margin";
  std::string optimizer = "adam";
  bool literal = false;
  bool corrupt_subject = false;
};

bool is_tsv(const std::string& path, const std::string& format) {
  if (format != "auto") return format == "tsv";
  const auto ext = fs::path(path).extension().string();
  return ext == ".tsv" || ext == ".txt";
}

// Fills defaults from a recipe file; flags given on the command line win.
void apply_recipe(const std::string& path, TrainArgs& a, Common& c, const CLI::App& sub) {
  json r;
  try {
    r = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw UsageError("cannot parse recipe " + path + ": " + e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  auto given = [&](const char* flag) { return sub.count(flag) > 0; };
  try {
    if (!given("--program") && r.contains("program")) c.program = (base / r["program"].get<std::string>()).string();
    if (!given("--data") && !given("--goal") && r.contains("data")) {
      a.data = (base / r["data"].at("train").get<std::string>()).string();
    }
    if (!given("--data-format") && r.contains("data_format")) a.data_format = r["data_format"];
    if (!given("--predicate") && r.contains("predicate")) a.predicate = r["predicate"];
    if (!given("--label-arg") && r.contains("label_arg")) a.label_arg = r["label_arg"];
    if (!given("--batch-size") && r.contains("batch_size")) a.batch_size = r["batch_size"];
    if (!given("--neg") && r.contains("negatives")) a.neg = r["negatives"];
    if (!given("--lr") && r.contains("lr")) a.lr = r["lr"];
    if (!given("--gamma") && r.contains("gamma")) a.gamma = r["gamma"];
    if (!given("--lambda") && r.contains("lambda")) a.lambda = r["lambda"];
    if (!given("--loss") && r.contains("loss")) a.loss = r["loss"];
    if (!given("--optimizer") && r.contains("optimizer")) a.optimizer = r["optimizer"];
    if (!given("--epochs") && r.contains("epochs")) a.epochs = r["epochs"];
  } catch (const json::exception& e) {
    throw UsageError("bad recipe " + path + ": " + e.what());
  }
  if (r.contains("index_ranges") && !c.program.empty()) {
    const auto ranges = load_program(c.program).ranges();
    for (const auto& [index, size] : r["index_ranges"].items()) {
      auto it = ranges.find(index);
      if (it == ranges.end() || it->second != size.get<std::size_t>()) {
        throw UsageError("recipe range " + index + " = " + size.dump() + " disagrees with " + c.program);
      }
    }
  }
}

int cmd_train(Common c, TrainArgs a, const CLI::App& sub) {
  if (!a.recipe.empty()) apply_recipe(a.recipe, a, c, sub);
  if (c.program.empty()) throw UsageError("--program is required");
  if (a.goal.empty() == a.data.empty()) throw UsageError("train needs exactly one of --goal and --data");
  if (a.loss != "margin" && a.loss != "nll") throw UsageError("--loss must be margin or nll");
  if (a.optimizer != "adam" && a.optimizer != "sgd") throw UsageError("--optimizer must be adam or sgd");
  if (c.jobs < 1) throw UsageError("--jobs must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  SourceProgram program = load_checked(c.program);
  std::vector<Atom> goals;
  CheckpointMeta meta;
  meta.predicate = a.predicate;
  std::optional<TripleStore> store;
  if (!a.goal.empty()) {
    goals.push_back(parse_atom(a.goal));
    if (!goals.back().is_ground()) throw UsageError("--goal must be ground");
  } else if (is_tsv(a.data, a.data_format)) {
    store = load_triples({{"train", a.data}}, UnseenPolicy::Error);
    goals = triples_to_goals(store->splits.at("train").triples, store->entities, store->relations, a.predicate);
    meta.relations = store->relations;
  } else {
    goals = load_goals(a.data).goals;
  }
  if (goals.empty()) throw UsageError("training dataset is empty");

  std::optional<std::size_t> label;
  if (a.label_arg >= 0) {
    label = static_cast<std::size_t>(a.label_arg);
  } else {
    const auto ranges = program.ranges();
    const EquationSet probe = compile(build_explanation_graph(program, goals.front()), ranges);
    if (probe.signature(probe.root).dims.size() == 1 && goals.front().arity() > 0) label = goals.front().arity() - 1;
  }
  const std::size_t object_slot = label ? *label : goals.front().arity() - 1;
  meta.entities = store ? store->entities : entity_vocab(goals, object_slot);
  meta.label_arg = label;

  TrainConfig cfg;
  cfg.loss.kind = a.loss == "nll" ? LossKind::NLL : LossKind::MarginKG;
  cfg.loss.gamma = a.gamma;
  cfg.loss.lambda = a.lambda;
  cfg.loss.negatives = a.neg;
  cfg.loss.batch_size = a.batch_size;
  cfg.loss.literal_form = a.literal;
  cfg.loss.corrupt_subject = a.corrupt_subject;
  cfg.optimizer.kind = a.optimizer == "sgd" ? OptimizerKind::SGD : OptimizerKind::Adam;
  cfg.optimizer.lr = a.lr;
  cfg.epochs = a.epochs;
  cfg.seed = c.seed;
  cfg.jobs = c.jobs;
  try {
    check_loss_config(cfg.loss);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }

  json config = {{"program", c.program},
                 {"goals", goals.size()},
                 {"entities", meta.entities.size()},
                 {"label_arg", label ? json(*label) : json(nullptr)},
                 {"seed", c.seed},
                 {"epochs", a.epochs},
                 {"batch_size", a.batch_size},
                 {"negatives", a.neg},
                 {"loss", a.loss},
                 {"loss_orientation", a.literal ? "pos - neg - gamma" : "gamma - pos + neg"},
                 {"gamma", a.gamma},
                 {"lambda", a.lambda},
                 {"optimizer", a.optimizer},
                 {"lr", a.lr},
                 {"jobs", c.jobs},
                 {"checkpoint", a.checkpoint}};
  if (c.emit == "text") std::cout << "config " << config.dump() << '\n';
  cfg.on_epoch = [&](std::size_t epoch, double mean) {
    if (c.emit == "text") std::cout << "epoch " << epoch << " loss " << fmt(mean) << '\n' << std::flush;
  };

  GoalModel model(std::move(program), meta.entities, label);
  TrainResult result = train(model, goals, cfg);
  save_checkpoint(result.params, a.checkpoint, meta);
  const std::string csv = a.loss_csv.empty() ? (fs::path(a.checkpoint) / "loss.csv").string() : a.loss_csv;
  {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw DataError("cannot write " + csv);
    out << "epoch,mean_loss\n";
    for (std::size_t e = 0; e < result.loss_curve.size(); ++e) out << e + 1 << ',' << fmt(result.loss_curve[e]) << '\n';
  }
  if (c.emit == "json") {
    std::cout << json{{"config", config}, {"loss_curve", result.loss_curve}, {"loss_csv", csv}}.dump(2) << '\n';
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "trained " << a.epochs << " epochs in " << seconds(secs) << " s\n";
  return 0;
}

struct RankArgs {
  std::string checkpoint;
  std::string data;
  std::vector<std::string> known;
  std::string data_format = "auto";
  std::string predicate;
  std::string unseen = "skip";
  int label_arg = -1;
  bool filtered = false;
};

std::vector<Atom> read_queries(const std::string& path, const std::string& format, const CheckpointMeta& meta,
                               const std::string& predicate, UnseenPolicy policy, std::size_t& skipped) {
  if (is_tsv(path, format)) {
    TripleSplit split = index_triples(read_triples(path), meta.entities, meta.relations, policy, path);
    skipped += split.skipped;
    return triples_to_goals(split.triples, meta.entities, meta.relations, predicate);
  }
  std::vector<Atom> out;
  for (auto& g : load_goals(path).goals) {
    const std::size_t slot = meta.label_arg.value_or(g.arity() - 1);
    if (slot < g.arity() && meta.entities.contains(symbol_of(g.args[slot]))) {
      out.push_back(std::move(g));
    } else if (policy == UnseenPolicy::Skip) {
      ++skipped;
    } else {
      throw DataError(path + ": label of " + g.str() + " is not in the entity vocabulary");
    }
  }
  return out;
}

int cmd_rank(const Common& c, const RankArgs& a) {
  if (c.jobs < 1) throw UsageError("--jobs must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  SourceProgram program = load_checked(c.program);
  Checkpoint ck = load_checkpoint(a.checkpoint, program.ranges());
  if (a.label_arg >= 0) ck.meta.label_arg = static_cast<std::size_t>(a.label_arg);
  if (ck.meta.entities.empty()) throw UsageError("checkpoint " + a.checkpoint + " has no entity vocabulary");
  const std::string predicate = !a.predicate.empty() ? a.predicate : !ck.meta.predicate.empty() ? ck.meta.predicate : "rel";
  const UnseenPolicy policy = a.unseen == "error" ? UnseenPolicy::Error : UnseenPolicy::Skip;

  std::size_t skipped = 0;
  const std::vector<Atom> queries = read_queries(a.data, a.data_format, ck.meta, predicate, policy, skipped);
  if (queries.empty()) throw UsageError("no queries in " + a.data);
  RankOptions opts;
  opts.filtered = a.filtered;
  opts.exec = c.jobs > 1 ? Execution::Parallel : Execution::Serial;
  for (const auto& path : a.known) {
    std::size_t ignored = 0;
    auto more = read_queries(path, a.data_format, ck.meta, predicate, UnseenPolicy::Skip, ignored);
    opts.known.insert(opts.known.end(), more.begin(), more.end());
  }
  if (!ck.meta.label_arg) {
    throw CompileError("program signature not vector-over-entities: the checkpoint records no label argument");
  }
  GoalModel model(std::move(program), ck.meta.entities, ck.meta.label_arg);
  RankingReport report = evaluate_ranking(model, ck.params, queries, opts);
  report.skipped = skipped;
  if (c.emit == "json") {
    json out = report.to_json();
    out["protocol"] = a.filtered ? "filtered" : "raw";
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "protocol  " << (a.filtered ? "filtered" : "raw") << '\n' << report.table();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "ranked " << queries.size() << " queries in " << seconds(secs) << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tenlog: tensorized logic programs"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool program_required) {
    auto* p = sub->add_option("--program", common.program, "Program file (.tpr)");
    if (program_required) p->required();
    sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    sub->add_option("--emit", common.emit, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--jobs", common.jobs, "Worker threads")->capture_default_str();
  };

  std::string goal;
  auto* explain = app.add_subcommand("explain", "Print the explanation graph of a goal");
  add_common(explain, true);
  explain->add_option("--goal", goal, "Ground goal")->required();

  auto* compile_cmd = app.add_subcommand("compile", "Print the tensor equations of a goal");
  add_common(compile_cmd, true);
  compile_cmd->add_option("--goal", goal, "Ground goal")->required();

  std::string equations;
  std::string eval_checkpoint;
  auto* eval = app.add_subcommand("eval", "Evaluate a goal");
  add_common(eval, false);
  auto* eval_goal = eval->add_option("--goal", goal, "Ground goal");
  auto* eval_eqs = eval->add_option("--equations", equations, "Equation JSON from compile --emit json");
  eval_goal->excludes(eval_eqs);
  eval->add_option("--checkpoint", eval_checkpoint, "Checkpoint directory");

  TrainArgs targs;
  auto* train_cmd = app.add_subcommand("train", "Train parameters on a goal dataset");
  add_common(train_cmd, false);
  auto* t_goal = train_cmd->add_option("--goal", targs.goal, "Single training goal");
  auto* t_data = train_cmd->add_option("--data", targs.data, "Goal file or TSV triples");
  t_goal->excludes(t_data);
  train_cmd->add_option("--data-format", targs.data_format, "goals, tsv or auto")
      ->check(CLI::IsMember({"auto", "goals", "tsv"}));
  train_cmd->add_option("--predicate", targs.predicate, "Predicate for TSV triples");
  train_cmd->add_option("--label-arg", targs.label_arg, "Head argument indexing the output axis");
  train_cmd->add_option("--checkpoint", targs.checkpoint, "Output checkpoint directory")->required();
  train_cmd->add_option("--loss-csv", targs.loss_csv, "Loss curve path (default: <checkpoint>/loss.csv)");
  train_cmd->add_option("--recipe", targs.recipe, "Recipe JSON with default settings");
  train_cmd->add_option("--epochs", targs.epochs, "Epochs")->capture_default_str();
  train_cmd->add_option("--batch-size", targs.batch_size, "Mini-batch size")->capture_default_str();
  train_cmd->add_option("--lr", targs.lr, "Learning rate")->capture_default_str();
  train_cmd->add_option("--gamma", targs.gamma, "Margin")->capture_default_str();
  train_cmd->add_option("--lambda", targs.lambda, "L2 weight")->capture_default_str();
  train_cmd->add_option("--neg", targs.neg, "Negatives per positive")->capture_default_str();
  train_cmd->add_option("--loss", targs.loss, "margin or nll")->check(CLI::IsMember({"margin", "nll"}));
  train_cmd->add_option("--optimizer", targs.optimizer, "adam or sgd")->check(CLI::IsMember({"adam", "sgd"}));
  train_cmd->add_flag("--paper-literal-loss", targs.literal, "Use max(0, pos - neg - gamma)");
  train_cmd->add_flag("--corrupt-subject", targs.corrupt_subject, "Draw negatives in the subject slot");

  RankArgs rargs;
  auto* rank = app.add_subcommand("rank", "Rank true objects among all entities");
  add_common(rank, true);
  rank->add_option("--checkpoint", rargs.checkpoint, "Checkpoint directory")->required();
  rank->add_option("--data", rargs.data, "Test triples (TSV) or goal file")->required();
  rank->add_option("--known", rargs.known, "Known-true files for --filtered");
  rank->add_option("--data-format", rargs.data_format, "goals, tsv or auto")
      ->check(CLI::IsMember({"auto", "goals", "tsv"}));
  rank->add_option("--predicate", rargs.predicate, "Predicate for TSV triples");
  rank->add_option("--label-arg", rargs.label_arg, "Head argument indexing the output axis");
  rank->add_option("--unseen", rargs.unseen, "Unseen entity policy")->check(CLI::IsMember({"skip", "error"}));
  rank->add_flag("--filtered", rargs.filtered, "Filtered protocol (not the raw default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  omp_set_num_threads(std::max(1, common.jobs));
  try {
    if (common.jobs < 1) throw UsageError("--jobs must be >= 1");
    if (*explain) return cmd_explain(common, goal);
    if (*compile_cmd) return cmd_compile(common, goal);
    if (*eval) {
      if (goal.empty() == equations.empty()) throw UsageError("eval needs exactly one of --goal and --equations");
      if (equations.empty() && common.program.empty()) throw UsageError("--program is required with --goal");
      return cmd_eval(common, goal, equations, eval_checkpoint);
    }
    if (*train_cmd) return cmd_train(common, targs, *train_cmd);
    if (*rank) return cmd_rank(common, rargs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid program: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return 2;
  } catch (const UnprovableGoal& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
