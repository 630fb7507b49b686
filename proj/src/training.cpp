/* Copyright 2026 The SMSMix Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "smsmix/training.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "smsmix/error.hpp"
#include "smsmix/wsdeval.hpp"

namespace smsmix {
namespace {

void run_stage(WsdModel& model, int stage, const StageConfig& cfg,
               const AnnotatedCorpus& corpus, const SenseInventory& inventory,
               std::size_t eval_every, const DevSet& dev,
               std::vector<EpochMetrics>& metrics) {
  std::vector<const AnnotatedInstance*> order;
  order.reserve(corpus.instances.size());
  for (const auto& inst : corpus.instances) order.push_back(&inst);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng rng = Rng::derive(cfg.seed, stage == 1 ? "stage1" : "stage2", epoch);
    rng.shuffle(order.begin(), order.end());
    const EpochStats stats = model.train_epoch(order, inventory, cfg.lr);
    if (!std::isfinite(stats.mean_loss)) {
      throw TrainingDiverged("non-finite loss in stage " +
                             std::to_string(stage) + " epoch " +
                             std::to_string(epoch));
    }
    EpochMetrics m{stage, epoch, stats.mean_loss, stats.trained, stats.skipped,
                   std::nullopt, std::nullopt};
    if (dev.corpus && dev.train_table && eval_every > 0 &&
        (epoch + 1) % eval_every == 0) {
      const auto report =
          evaluate(model, *dev.corpus, inventory, *dev.train_table);
      m.dev_micro_f1 = report.rows.front().micro_f1;
      m.dev_macro_f1 = report.rows.front().macro_f1;
    }
    metrics.push_back(m);
  }
}

}  // namespace

TwoStageResult two_stage_train(const ModelFactory& factory,
                               const AnnotatedCorpus& original,
                               const AnnotatedCorpus& assembled,
                               const SenseInventory& inventory,
                               const TrainConfig& cfg, DevSet dev) {
  if (original.empty()) throw DataError("training corpus is empty");
  if (cfg.stage1.lr < 0.0 || cfg.stage2.lr < 0.0) {
    throw ConfigError("learning rates must be nonnegative");
  }
  TwoStageResult result;
  result.model = factory();
  run_stage(*result.model, 1, cfg.stage1, original, inventory, cfg.eval_every,
            dev, result.metrics);
  result.stage1 = result.model->clone();
  const AnnotatedCorpus& second = assembled.empty() ? original : assembled;
  run_stage(*result.model, 2, cfg.stage2, second, inventory, cfg.eval_every,
            dev, result.metrics);
  return result;
}

void write_metrics(const std::vector<EpochMetrics>& metrics,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write metrics: " + path.string());
  for (const auto& m : metrics) {
    nlohmann::ordered_json j;
    j["stage"] = m.stage;
    j["epoch"] = m.epoch;
    j["mean_loss"] = m.mean_loss;
    j["trained"] = m.trained;
    j["skipped"] = m.skipped;
    if (m.dev_micro_f1) j["dev_micro_f1"] = *m.dev_micro_f1;
    if (m.dev_macro_f1) j["dev_macro_f1"] = *m.dev_macro_f1;
    out << j.dump() << '\n';
  }
}

}  // namespace smsmix
