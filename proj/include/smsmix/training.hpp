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

#ifndef SMSMIX_TRAINING_HPP_
#define SMSMIX_TRAINING_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "smsmix/backends.hpp"
#include "smsmix/corpus.hpp"

namespace smsmix {

struct StageConfig {
  double lr = 0.1;
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
};

struct TrainConfig {
  StageConfig stage1;
  // A single low-rate epoch over original + augmented data. The toy default
  // is stage1.lr / 100; transformer adapters would use 5e-7 directly.
  StageConfig stage2{0.001, 1, 1};
  std::size_t eval_every = 1;

  static TrainConfig standard(double lr, std::size_t epochs,
                              std::uint64_t seed) {
    return TrainConfig{{lr, epochs, seed}, {lr / 100.0, 1, seed + 1}, 1};
  }
};

struct EpochMetrics {
  int stage = 1;
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  std::size_t trained = 0;
  std::size_t skipped = 0;
  std::optional<double> dev_micro_f1;
  std::optional<double> dev_macro_f1;
};

struct TwoStageResult {
  std::unique_ptr<WsdModel> stage1;  // snapshot after stage 1
  std::unique_ptr<WsdModel> model;   // final model
  std::vector<EpochMetrics> metrics;
};

using ModelFactory = std::function<std::unique_ptr<WsdModel>()>;

struct DevSet {
  const AnnotatedCorpus* corpus = nullptr;
  const FrequencyTable* train_table = nullptr;
};

// Stage 1 trains a fresh model on `original` only; stage 2 continues for
// cfg.stage2.epochs over `assembled` (original + augmented, shuffled jointly)
// at cfg.stage2.lr. Throws DataError on an empty corpus, ConfigError on a
// negative rate, TrainingDiverged (tagged with stage and epoch) on a
// non-finite loss.
TwoStageResult two_stage_train(const ModelFactory& factory,
                               const AnnotatedCorpus& original,
                               const AnnotatedCorpus& assembled,
                               const SenseInventory& inventory,
                               const TrainConfig& cfg, DevSet dev = {});

void write_metrics(const std::vector<EpochMetrics>& metrics,
                   const std::filesystem::path& path);

}  // namespace smsmix

#endif  // SMSMIX_TRAINING_HPP_
