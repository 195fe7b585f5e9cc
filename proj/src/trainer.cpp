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

#include "tenlog/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include <omp.h>

#include "tenlog/dataset.hpp"
#include "tenlog/error.hpp"
#include "tenlog/loss.hpp"

namespace tenlog {

void check_loss_config(const LossConfig& cfg) {
  if (!(cfg.gamma >= 0.0)) throw ValidationError("margin gamma must be >= 0");
  if (!(cfg.lambda >= 0.0)) throw ValidationError("l2 lambda must be >= 0");
  if (cfg.negatives < 1) throw ValidationError("negatives per positive must be >= 1");
  if (cfg.batch_size < 1) throw ValidationError("batch size must be >= 1");
}

namespace {

const char* kPlaceholder = "$label";

void count_variables(const Term& t, std::map<std::string, std::size_t>& counts) {
  if (t.is_variable()) {
    ++counts[t.name()];
    return;
  }
  for (const auto& a : t.args()) count_variables(a, counts);
}

}  // namespace

GoalModel::GoalModel(SourceProgram program, Vocab entities, std::optional<std::size_t> label_arg,
                     const OperatorRegistry& registry, ExplainOptions options)
    : program_(std::make_unique<const SourceProgram>(std::move(program))),
      entities_(std::move(entities)),
      label_arg_(label_arg),
      registry_(registry),
      explainer_(std::make_unique<Explainer>(*program_, options)) {
  if (!label_arg_) return;
  for (const auto& c : program_->clauses) {
    const std::string ind = c.head.indicator();
    auto [it, inserted] = placeholder_ok_.try_emplace(ind, true);
    if (*label_arg_ >= c.head.arity()) {
      it->second = false;
      continue;
    }
    const Term& slot = c.head.args[*label_arg_];
    std::map<std::string, std::size_t> counts;
    for (const auto& a : c.head.args) count_variables(a, counts);
    for (const auto& b : c.body) {
      for (const auto& a : b.args) count_variables(a, counts);
    }
    if (!slot.is_variable() || counts[slot.name()] != 1) it->second = false;
  }
}

GoalModel::~GoalModel() = default;

std::size_t GoalModel::object_arg(const Atom& goal) const {
  if (label_arg_) return *label_arg_;
  if (goal.args.empty()) throw DataError("goal " + goal.str() + " has no arguments to corrupt");
  return goal.arity() - 1;
}

std::string GoalModel::cache_key(const Atom& goal) const {
  if (!label_arg_) return goal.str();
  if (*label_arg_ >= goal.arity()) {
    throw DataError("label argument " + std::to_string(*label_arg_) + " is out of range for " + goal.str());
  }
  auto it = placeholder_ok_.find(goal.indicator());
  if (it == placeholder_ok_.end() || !it->second) return goal.str();
  Atom g = goal;
  g.args[*label_arg_] = Term::constant(kPlaceholder);
  return g.str();
}

const EquationSet& GoalModel::compile(const Atom& goal) {
  const std::string key = cache_key(goal);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Atom g = goal;
  if (label_arg_ && key != goal.str()) g.args[*label_arg_] = Term::constant(kPlaceholder);
  const ExplanationGraph graph = explainer_->explain(g);
  const auto ranges = program_->ranges();
  EquationSet eqs = tenlog::compile(graph, ranges, registry_);
  check_shapes(eqs, ranges, registry_);
  const IndexSignature& sig = eqs.signature(eqs.root);
  if (label_arg_) {
    if (sig.dims.size() != 1 || sig.dims[0] < entities_.size()) {
      throw CompileError("program signature not vector-over-entities: " + eqs.root + " has signature " + sig.str() +
                         " but there are " + std::to_string(entities_.size()) + " entities");
    }
  } else if (!sig.is_scalar()) {
    throw CompileError("goal " + eqs.root + " has signature " + sig.str() +
                       "; a vector-valued goal needs a label argument");
  }
  return cache_.emplace(key, std::move(eqs)).first->second;
}

const EquationSet& GoalModel::compiled(const Atom& goal) const {
  auto it = cache_.find(cache_key(goal));
  if (it == cache_.end()) throw Error("goal " + goal.str() + " has not been compiled");
  return it->second;
}

void GoalModel::prepare(const Atom& goal, ParamStore& params) {
  for (const auto& k : param_keys(compile(goal))) params.ensure(k);
}

std::size_t GoalModel::label_id(const Atom& goal) const {
  if (!label_arg_) return 0;
  const std::string sym = symbol_of(goal.args.at(*label_arg_));
  auto id = entities_.find(sym);
  if (!id) throw DataError("label " + sym + " of " + goal.str() + " is not in the entity vocabulary");
  return *id;
}

Atom GoalModel::with_entity(const Atom& goal, std::size_t arg, std::size_t id) const {
  Atom g = goal;
  g.args.at(arg) = term_of(entities_.symbol(id));
  return g;
}

namespace {

struct Example {
  Atom goal;
  std::vector<Atom> negatives;
};

// Loss and gradients for one positive and its negatives.
void example_loss(const Example& ex, const GoalModel& model, const ParamStore& params, const LossConfig& cfg,
                  LossResult& acc) {
  struct Eval {
    const EquationSet* eqs = nullptr;
    EvalTrace trace;
    DenseTensor seed;
    bool used = false;
  };
  std::map<std::string, Eval> evals;
  ForwardOptions fopts;
  fopts.exec = Execution::Serial;
  auto probe = [&](const Atom& g) -> std::pair<Eval*, std::size_t> {
    const std::string key = model.cache_key(g);
    auto [it, inserted] = evals.try_emplace(key);
    if (inserted) {
      it->second.eqs = &model.compiled(g);
      it->second.trace = forward(*it->second.eqs, params, fopts, model.registry());
      it->second.seed = DenseTensor(it->second.eqs->signature(it->second.eqs->root).dims);
    }
    return {&it->second, model.label_id(g)};
  };
  auto score = [](Eval* e, std::size_t pos) { return e->trace.value(e->eqs->root)[pos]; };

  auto [pe, ppos] = probe(ex.goal);
  const double pos = score(pe, ppos);
  double loss = 0.0;
  if (cfg.kind == LossKind::NLL) {
    const LossValue l = nll_loss(pos, ex.goal.str());
    loss = l.value;
    pe->seed[ppos] += l.grad;
    pe->used = true;
  } else {
    const double scale = 1.0 / static_cast<double>(ex.negatives.size());
    for (const auto& n : ex.negatives) {
      auto [ne, npos] = probe(n);
      const HingeValue h = margin_kg_loss(pos, score(ne, npos), cfg.gamma, cfg.literal_form);
      if (h.value == 0.0) continue;
      loss += h.value * scale;
      pe->seed[ppos] += h.d_pos * scale;
      ne->seed[npos] += h.d_neg * scale;
      pe->used = ne->used = true;
    }
  }
  acc.loss += loss;
  for (auto& [key, e] : evals) {
    if (!e.used) continue;
    for (auto& [k, g] : backward(e.trace, {{e.eqs->root, e.seed}}, Execution::Serial)) {
      auto it = acc.grads.find(k);
      if (it == acc.grads.end()) {
        acc.grads.emplace(k, std::move(g));
      } else {
        it->second += g;
      }
    }
  }
}

}  // namespace

std::vector<Atom> draw_negatives(const GoalModel& model, const Atom& goal, const LossConfig& cfg,
                                 std::mt19937_64& rng) {
  if (model.entities().empty()) throw DataError("negative sampling needs a nonempty entity vocabulary");
  std::uniform_int_distribution<std::size_t> pick(0, model.entities().size() - 1);
  const std::size_t slot = cfg.corrupt_subject ? 0 : model.object_arg(goal);
  std::vector<Atom> out;
  out.reserve(cfg.negatives);
  for (std::size_t n = 0; n < cfg.negatives; ++n) out.push_back(model.with_entity(goal, slot, pick(rng)));
  return out;
}

LossResult total_loss(const std::vector<Atom>& batch, GoalModel& model, ParamStore& params, const LossConfig& cfg,
                      std::mt19937_64& rng, int jobs) {
  check_loss_config(cfg);
  LossResult result;
  if (batch.empty()) return result;

  // Serial phase: draw negatives and create every parameter used.
  std::vector<Example> examples;
  examples.reserve(batch.size());
  for (const auto& goal : batch) {
    model.prepare(goal, params);
    Example ex{goal, {}};
    if (cfg.kind == LossKind::MarginKG) {
      ex.negatives = draw_negatives(model, goal, cfg, rng);
      for (const auto& neg : ex.negatives) model.prepare(neg, params);
    }
    examples.push_back(std::move(ex));
  }

  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(examples.size())));
  std::vector<LossResult> partial(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const auto n = static_cast<std::int64_t>(examples.size());
  const GoalModel& cmodel = model;
  const ParamStore& cparams = params;
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    if (errors[t]) continue;
    try {
      example_loss(examples[static_cast<std::size_t>(k)], cmodel, cparams, cfg, partial[t]);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (std::size_t t = 0; t < partial.size(); ++t) {
    if (errors[t]) std::rethrow_exception(errors[t]);
    result.loss += partial[t].loss;
    for (auto& [k, g] : partial[t].grads) {
      auto it = result.grads.find(k);
      if (it == result.grads.end()) {
        result.grads.emplace(k, std::move(g));
      } else {
        it->second += g;
      }
    }
  }

  if (cfg.lambda > 0.0) {
    for (const auto& [key, entry] : params.entries()) {
      if (!entry.trainable) continue;
      auto [it, inserted] = result.grads.try_emplace(key, DenseTensor(entry.value.shape()));
      for (std::size_t i = 0; i < entry.value.size(); ++i) {
        const double x = entry.value[i];
        result.l2 += x * x;
        it->second[i] += 2.0 * cfg.lambda * x;
      }
    }
    result.l2 *= cfg.lambda;
    result.loss += result.l2;
  }
  return result;
}

TrainResult train(GoalModel& model, const std::vector<Atom>& goals, const TrainConfig& cfg,
                  std::optional<ParamStore> initial) {
  check_loss_config(cfg.loss);
  if (goals.empty()) throw DataError("training dataset is empty");
  TrainResult out{initial ? std::move(*initial) : ParamStore(model.program().ranges(), cfg.seed), {},
                  OptimizerState{cfg.optimizer, 0, {}, {}}};
  for (const auto& g : goals) model.prepare(g, out.params);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(goals.size());
  std::iota(order.begin(), order.end(), 0);
  const Execution exec = cfg.jobs > 1 ? Execution::Parallel : Execution::Serial;
  const std::size_t m = cfg.loss.batch_size;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t start = 0, b = 0; start < order.size(); start += m, ++b) {
      std::vector<Atom> batch;
      for (std::size_t k = start; k < std::min(start + m, order.size()); ++k) batch.push_back(goals[order[k]]);
      LossResult r = total_loss(batch, model, out.params, cfg.loss, rng, cfg.jobs);
      if (!std::isfinite(r.loss)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1) + ", batch " + std::to_string(b + 1));
      }
      optimizer_step(out.optimizer, out.params, r.grads, exec);
      total += r.loss;
    }
    const double mean = total / static_cast<double>(goals.size());
    out.loss_curve.push_back(mean);
    if (cfg.on_epoch) cfg.on_epoch(epoch + 1, mean);
  }
  return out;
}

}  // namespace tenlog
