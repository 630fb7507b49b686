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

#ifndef SMSMIX_AUGMENTOR_HPP_
#define SMSMIX_AUGMENTOR_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "smsmix/corpus.hpp"
#include "smsmix/mixer.hpp"

namespace smsmix {

enum class SelectionPolicy { kRandom, kRarest };

std::string_view to_string(SelectionPolicy policy);
std::optional<SelectionPolicy> parse_selection_policy(std::string_view text);

struct AugmentationPlan {
  std::vector<TargetSense> targets;
  std::size_t per_sense = 3;
  InjectionMode mode = InjectionMode::kExternal;
  double lfs_fraction = 0.5;
  SelectionPolicy selection_policy = SelectionPolicy::kRandom;
  std::size_t retry_limit = 5;
  std::uint64_t seed = 0;
  double max_fraction = 0.5;
};

struct GenerationStats {
  std::size_t attempted = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t skipped_senses = 0;

  bool operator==(const GenerationStats&) const = default;
};

struct AugmentedDataset {
  std::vector<AugmentedExample> examples;  // accepted, in target order
  std::vector<AugmentedExample> rejected;  // judge rejections, for analysis
  AugmentationPlan plan;
  GenerationStats stats;
};

// ceil(fraction * |LFS|) senses without replacement: a seeded uniform draw
// (kRandom) or the lowest-count ones (kRarest). Output is in (lemma, pos, key)
// order. Throws ConfigError if fraction is outside (0, 1].
std::vector<TargetSense> select_lfs_targets(
    const FrequencyTable& table, double lfs_fraction, Rng& rng,
    SelectionPolicy policy = SelectionPolicy::kRandom);

// Mixes per_sense accepted examples for every target, retrying a rejected
// slot up to retry_limit times with a fresh stream. Senses without source
// instances (or, in internal mode, without MFS hosts) are skipped. Targets run
// on up to `workers` threads; the result does not depend on the worker count.
AugmentedDataset generate(const AnnotatedCorpus& corpus,
                          const AugmentationPlan& plan, const MixDeps& deps,
                          std::size_t workers = 1);

// per_sense verbatim copies of uniformly drawn source instances per target.
AugmentedDataset oversample(const AnnotatedCorpus& corpus,
                            const AugmentationPlan& plan);

// Original instances first, then each accepted example as an instance whose
// id starts with "smsmix:".
AnnotatedCorpus assemble_training_set(const AnnotatedCorpus& original,
                                      const AugmentedDataset& augmented);

// Line-delimited JSON: a schema header line, then one record per example.
void write_dataset(const AugmentedDataset& dataset,
                   const std::filesystem::path& path,
                   bool include_rejected = true);
AugmentedDataset read_dataset(const std::filesystem::path& path);

}  // namespace smsmix

#endif  // SMSMIX_AUGMENTOR_HPP_
