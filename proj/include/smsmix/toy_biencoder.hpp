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

#ifndef SMSMIX_TOY_BIENCODER_HPP_
#define SMSMIX_TOY_BIENCODER_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "smsmix/backends.hpp"

namespace smsmix {

struct ToyHyper {
  std::size_t dim = 16;
  std::size_t window = 5;  // context radius around the target
  double lr = 0.1;
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
  double init_scale = 0.1;
  // Attention pooling over the window with a learned query. With a zero
  // query (the initial state) it is exactly the window mean; with
  // attention off the pool is always the mean.
  bool attention = true;
};

// Small deterministic bi-encoder.
//
//   context c = sum_j a_j e_j over window positions j, a = softmax_j(q . e_j)
//   gloss g_k = mean of the gloss token embeddings of candidate k
//   score_k   = c . g_k, trained with softmax cross-entropy
//
// Context and gloss share one embedding table; row 0 is the UNK row.
class ToyBiEncoder final : public WsdModel,
                           public SaliencyBackend,
                           public TargetEncoder {
 public:
  static constexpr std::string_view kUnk = "<unk>";

  // Vocabulary from corpus tokens and inventory glosses, seeded random init.
  static ToyBiEncoder initialize(const AnnotatedCorpus& corpus,
                                 const SenseInventory& inventory,
                                 const ToyHyper& hyper);

  // Throws ParseError on a bad magic header or truncated body.
  static ToyBiEncoder load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const override;

  std::vector<double> score(
      const Sentence& sentence, std::size_t target_index,
      std::span<const SenseEntry> candidates) const override;
  EpochStats train_epoch(std::span<const AnnotatedInstance* const> order,
                         const SenseInventory& inventory, double lr) override;
  std::unique_ptr<WsdModel> clone() const override;

  // s[i] = || dL/de_i ||_2 for the embedding fed in at position i. Positions
  // outside the window get 0. Throws LabelNotCandidate.
  SaliencyVector token_saliency(
      const AnnotatedInstance& instance,
      std::span<const SenseEntry> candidates) const override;

  // The pooled context vector.
  std::vector<double> encode(const Sentence& sentence,
                             std::size_t target_index) const override;
  std::size_t dimension() const override { return hyper_.dim; }

  // Loss and gradients with respect to every input of one example.
  struct Gradients {
    double loss = 0.0;
    std::size_t window_begin = 0;         // first window position
    std::vector<Eigen::VectorXd> inputs;  // dL/de per window position
    Eigen::VectorXd query;
    std::vector<Eigen::VectorXd> glosses;  // dL/dg_k per candidate
  };
  Gradients gradients(const Sentence& sentence, std::size_t target_index,
                      std::span<const SenseEntry> candidates,
                      std::size_t gold) const;

  std::size_t token_id(std::string_view token) const;
  std::vector<std::size_t> gloss_ids(const SenseEntry& entry) const;
  std::pair<std::size_t, std::size_t> window_bounds(
      std::size_t sentence_len, std::size_t target_index) const;

  const ToyHyper& hyper() const { return hyper_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const Eigen::MatrixXd& embeddings() const { return embeddings_; }
  Eigen::MatrixXd& embeddings() { return embeddings_; }
  const Eigen::VectorXd& query() const { return query_; }
  Eigen::VectorXd& query() { return query_; }

  bool operator==(const ToyBiEncoder& other) const;

 private:
  ToyBiEncoder(ToyHyper hyper, std::vector<std::string> vocab);

  Eigen::VectorXd gloss_vector(const SenseEntry& entry) const;
  std::size_t gold_position(const AnnotatedInstance& instance,
                            std::span<const SenseEntry> candidates) const;

  ToyHyper hyper_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::map<SenseKey, std::vector<std::size_t>> gloss_cache_;
  Eigen::MatrixXd embeddings_;  // |V| x d
  Eigen::VectorXd query_;       // d
};

struct ToyTrainResult {
  ToyBiEncoder model;
  std::vector<double> epoch_losses;
  std::size_t skipped_instances = 0;
};

// Per-instance gradient descent, order reshuffled each epoch from the seed.
ToyTrainResult toy_train(const AnnotatedCorpus& corpus,
                         const SenseInventory& inventory,
                         const ToyHyper& hyper);

}  // namespace smsmix

#endif  // SMSMIX_TOY_BIENCODER_HPP_
