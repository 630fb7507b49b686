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

#ifndef SMSMIX_BACKENDS_HPP_
#define SMSMIX_BACKENDS_HPP_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smsmix/corpus.hpp"
#include "smsmix/inventory.hpp"
#include "smsmix/spanselect.hpp"

namespace smsmix {

// Reserved mask sentinels, numbered left to right.
std::string sentinel(std::size_t i);
bool is_sentinel(std::string_view token);

// Host tokens with the masked donor block spliced in.
struct MaskedText {
  std::vector<std::string> tokens;
  std::vector<std::size_t> sentinel_positions;
  Span donor_span;  // positions of the donor tokens inside `tokens`
  std::size_t target_offset = 0;

  bool operator==(const MaskedText&) const = default;
};

using Infills = std::vector<std::vector<std::string>>;

// Backends that cannot serve concurrent calls report false from
// concurrent_safe(); the orchestrator then runs them on a single worker.

class SaliencyBackend {
 public:
  virtual ~SaliencyBackend() = default;
  // One score per word token of the instance's sentence, computed against the
  // instance's gold label.
  virtual SaliencyVector token_saliency(
      const AnnotatedInstance& instance,
      std::span<const SenseEntry> candidates) const = 0;
  virtual bool concurrent_safe() const { return true; }
};

class InfillEngine {
 public:
  virtual ~InfillEngine() = default;
  // Exactly one (possibly empty) token sequence per sentinel, in order.
  virtual Infills infill(const MaskedText& masked) const = 0;
  virtual bool concurrent_safe() const { return true; }
};

class AcceptabilityJudge {
 public:
  virtual ~AcceptabilityJudge() = default;
  virtual bool accept(const Sentence& sentence) const = 0;
  virtual bool concurrent_safe() const { return true; }
};

class TargetEncoder {
 public:
  virtual ~TargetEncoder() = default;
  virtual std::vector<double> encode(const Sentence& sentence,
                                     std::size_t target_index) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual bool concurrent_safe() const { return true; }
};

struct EpochStats {
  double mean_loss = 0.0;
  std::size_t trained = 0;
  std::size_t skipped = 0;  // instances with no candidate senses
};

// A trainable candidate scorer.
class WsdModel {
 public:
  virtual ~WsdModel() = default;

  // One score per candidate; an empty result means the model abstains.
  virtual std::vector<double> score(
      const Sentence& sentence, std::size_t target_index,
      std::span<const SenseEntry> candidates) const = 0;

  // One pass of per-instance gradient steps in the given order.
  virtual EpochStats train_epoch(
      std::span<const AnnotatedInstance* const> order,
      const SenseInventory& inventory, double lr) = 0;

  virtual std::unique_ptr<WsdModel> clone() const = 0;
  virtual void save(const std::filesystem::path& path) const = 0;
};

}  // namespace smsmix

#endif  // SMSMIX_BACKENDS_HPP_
