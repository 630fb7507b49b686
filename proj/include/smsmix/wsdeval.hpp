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

#ifndef SMSMIX_WSDEVAL_HPP_
#define SMSMIX_WSDEVAL_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "smsmix/backends.hpp"
#include "smsmix/corpus.hpp"

namespace smsmix {

struct GoldEntry {
  std::vector<SenseKey> keys;  // first key is the primary label
  LemmaPos lemma_pos;
};

using GoldMap = std::map<std::string, GoldEntry>;
using PredictionSet = std::map<std::string, SenseKey>;

GoldMap gold_map(const AnnotatedCorpus& corpus);

// Instance-level F1: precision over attempted instances, recall over all
// gold instances. A prediction is correct if it matches any gold key.
double micro_f1(const PredictionSet& preds, const GoldMap& gold);

enum class MacroUnit { kBySense, kByLemma };

// Unweighted mean of one-vs-rest F1 per gold sense key. An instance is
// attributed to the key it was credited with, or to its first gold key when
// wrong or unattempted. kByLemma first averages within each (lemma, POS).
double macro_f1(const PredictionSet& preds, const GoldMap& gold,
                MacroUnit unit = MacroUnit::kBySense);

inline constexpr std::array<std::string_view, 5> kSubsetNames = {
    "MFS", "LFS", "0-lex", "0-lex-def", "0-def"};
inline constexpr std::string_view kSubsetVersion = "priority-v1";

struct SubsetPartition {
  // Indexed like kSubsetNames.
  std::array<std::set<std::string>, 5> subsets;
  std::size_t not_in_inventory = 0;

  const std::set<std::string>& mfs() const { return subsets[0]; }
  const std::set<std::string>& lfs() const { return subsets[1]; }
  const std::set<std::string>& zero_lex() const { return subsets[2]; }
  const std::set<std::string>& zero_lex_def() const { return subsets[3]; }
  const std::set<std::string>& zero_def() const { return subsets[4]; }
};

// Disjoint five-way split of the evaluation instances by training evidence.
// Priority: 0-lex-def > 0-lex > 0-def > MFS/LFS. A sense key counts as seen
// if it occurs anywhere in the training table. The inventory, when given,
// only feeds the not_in_inventory tally.
SubsetPartition subset_partition(const AnnotatedCorpus& eval_corpus,
                                 const FrequencyTable& train_table,
                                 const SenseInventory* inventory = nullptr);

struct EvalRow {
  std::string dataset;
  std::string subset;  // "ALL" or one of kSubsetNames
  std::size_t n_instances = 0;
  std::size_t n_senses = 0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::map<std::string, std::string> metadata;
  std::size_t unattempted = 0;
  PredictionSet predictions;
};

struct EvalOptions {
  std::string dataset = "eval";
  std::string model_id = "model";
  std::uint64_t seed = 0;
  MacroUnit unit = MacroUnit::kBySense;
};

// Scores fixed predictions against the corpus: global row plus one row per
// subset.
EvalReport score_predictions(const PredictionSet& preds,
                             const AnnotatedCorpus& eval_corpus,
                             const FrequencyTable& train_table,
                             const SenseInventory* inventory,
                             const EvalOptions& options = {});

// Predicts with argmax over candidate scores, backing off to the training
// MFS and then the first candidate when the model abstains. Instances with no
// candidates stay unattempted.
EvalReport evaluate(const WsdModel& model, const AnnotatedCorpus& eval_corpus,
                    const SenseInventory& inventory,
                    const FrequencyTable& train_table,
                    const EvalOptions& options = {});

void write_report(const EvalReport& report, const std::filesystem::path& path);

// Mean and sample standard deviation per (dataset, subset) across runs.
void write_multi_seed_report(const std::vector<EvalReport>& runs,
                             const std::filesystem::path& path);

void write_predictions(const PredictionSet& preds,
                       const std::filesystem::path& path);
PredictionSet read_predictions(const std::filesystem::path& path);

}  // namespace smsmix

#endif  // SMSMIX_WSDEVAL_HPP_
