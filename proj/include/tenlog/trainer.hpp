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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tenlog/compile.hpp"
#include "tenlog/evaluate.hpp"
#include "tenlog/explain.hpp"
#include "tenlog/optimizer.hpp"
#include "tenlog/params.hpp"
#include "tenlog/syntax.hpp"
#include "tenlog/vocab.hpp"

namespace tenlog {

enum class LossKind { NLL, MarginKG };

struct LossConfig {
  LossKind kind = LossKind::MarginKG;
  double gamma = 1.0;
  double lambda = 0.0;
  std::size_t negatives = 1;
  std::size_t batch_size = 1;
  /// max(0, pos - neg - gamma) instead of max(0, gamma - pos + neg).
  bool literal_form = false;
  /// Corrupt the subject (first argument) instead of the object.
  bool corrupt_subject = false;
};

/// Validates the invariants gamma >= 0, lambda >= 0, negatives >= 1, batch_size >= 1.
void check_loss_config(const LossConfig& cfg);

/// Compiles goals on demand and caches the equations. With a label argument
/// the root goal must be a vector over the entity axis; goals that differ
/// only in the label share one equation set when every clause head for the
/// predicate has a singleton variable in that position.
class GoalModel {
 public:
  GoalModel(SourceProgram program, Vocab entities, std::optional<std::size_t> label_arg,
            const OperatorRegistry& registry = builtin_operators(), ExplainOptions options = {});
  GoalModel(const GoalModel&) = delete;
  GoalModel& operator=(const GoalModel&) = delete;
  ~GoalModel();

  const SourceProgram& program() const noexcept { return *program_; }
  const Vocab& entities() const noexcept { return entities_; }
  std::optional<std::size_t> label_arg() const noexcept { return label_arg_; }
  const OperatorRegistry& registry() const noexcept { return registry_; }
  /// Argument replaced when drawing object negatives.
  std::size_t object_arg(const Atom& goal) const;

  std::string cache_key(const Atom& goal) const;
  /// Explains and compiles on first use. Not thread-safe.
  const EquationSet& compile(const Atom& goal);
  /// Lookup of an already compiled goal. Thread-safe.
  const EquationSet& compiled(const Atom& goal) const;
  /// Compiles the goal and creates its missing parameters.
  void prepare(const Atom& goal, ParamStore& params);

  /// Output-axis position of the goal's label.
  std::size_t label_id(const Atom& goal) const;
  /// Goal with argument `arg` replaced by entity `id`.
  Atom with_entity(const Atom& goal, std::size_t arg, std::size_t id) const;

 private:
  std::unique_ptr<const SourceProgram> program_;
  Vocab entities_;
  std::optional<std::size_t> label_arg_;
  const OperatorRegistry& registry_;
  std::unique_ptr<Explainer> explainer_;
  std::map<std::string, EquationSet> cache_;
  std::map<std::string, bool> placeholder_ok_;
};

struct LossResult {
  double loss = 0.0;
  double l2 = 0.0;
  std::map<TensorKey, DenseTensor> grads;
};

/// Sum of per-goal losses plus one L2 term over all trainable tensors, with
/// gradients. Negatives are drawn from `rng` serially in batch order, then
/// goals are evaluated on up to `jobs` threads.
/// `cfg.negatives` corruptions of the object slot (or the subject slot),
/// entities drawn uniformly with replacement.
std::vector<Atom> draw_negatives(const GoalModel& model, const Atom& goal, const LossConfig& cfg,
                                 std::mt19937_64& rng);

LossResult total_loss(const std::vector<Atom>& batch, GoalModel& model, ParamStore& params, const LossConfig& cfg,
                      std::mt19937_64& rng, int jobs = 1);

struct TrainConfig {
  LossConfig loss;
  OptimizerConfig optimizer;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::function<void(std::size_t epoch, double mean_loss)> on_epoch;
};

struct TrainResult {
  ParamStore params;
  std::vector<double> loss_curve;
  OptimizerState optimizer;
};

/// Shuffles each epoch with a generator seeded by cfg.seed and takes one
/// optimizer step per mini-batch. Starts from `initial` when given, else from
/// a fresh seeded store.
TrainResult train(GoalModel& model, const std::vector<Atom>& goals, const TrainConfig& cfg,
                  std::optional<ParamStore> initial = std::nullopt);

}  // namespace tenlog
