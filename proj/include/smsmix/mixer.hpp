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

#ifndef SMSMIX_MIXER_HPP_
#define SMSMIX_MIXER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smsmix/backends.hpp"
#include "smsmix/corpus.hpp"

namespace smsmix {

enum class InjectionMode { kOversample, kInternal, kExternal };

std::string_view to_string(InjectionMode mode);
std::optional<InjectionMode> parse_injection_mode(std::string_view text);

struct Provenance {
  std::string source_instance_id;
  std::string host_id;
  Span donor_span;  // in the source sentence
  Span host_span;   // in the host sentence, replaced by the donor block
  InjectionMode mode = InjectionMode::kExternal;
  Infills infills;
  bool judge_verdict = true;
  std::uint64_t seed = 0;
  std::string tie_break = "nearest";
  // Label the host saliency was computed against (internal mode only).
  std::string host_saliency_label;

  bool operator==(const Provenance&) const = default;
};

struct AugmentedExample {
  Sentence sentence;
  std::size_t target_index = 0;
  std::string lemma;
  Pos pos = Pos::kNoun;
  SenseKey label;  // always the source instance's gold key
  Provenance provenance;
  bool accepted = false;

  bool operator==(const AugmentedExample&) const = default;
};

// [<extra_id_0>] + donor + [<extra_id_1>]
std::vector<std::string> place_masks(std::span<const std::string> donor);

// Deletes host_span from the host and splices masked_donor in its place.
// `target_in_donor` is the target's index inside masked_donor. Throws
// SpanOutOfRange.
MaskedText inject(const Sentence& host, Span host_span,
                  std::span<const std::string> masked_donor,
                  std::size_t target_in_donor);

struct SmoothResult {
  Sentence sentence;
  std::size_t target_index = 0;
  Infills infills;
};

// Replaces each sentinel with the engine's infill. Throws
// BackendContractViolation if the engine returns the wrong number of infills.
SmoothResult smooth(const InfillEngine& engine, const MaskedText& masked);

// Everything mix() needs. Internal mode reads corpus/table (and index when
// present); external mode reads external.
struct MixDeps {
  const SaliencyBackend* saliency = nullptr;
  const InfillEngine* infill = nullptr;
  const AcceptabilityJudge* judge = nullptr;
  const SenseInventory* inventory = nullptr;
  const AnnotatedCorpus* corpus = nullptr;
  const SenseIndex* index = nullptr;
  const FrequencyTable* table = nullptr;
  const ExternalCorpus* external = nullptr;
  double max_fraction = 0.5;  // random host span cap, external mode
};

// saliency -> sense-maintained span -> masks -> host selection -> splice ->
// infill -> judge. All randomness comes from a stream seeded with `seed`,
// which is recorded in the provenance. Backend failures are rethrown with
// the stage name prefixed.
AugmentedExample mix(const AnnotatedInstance& source, InjectionMode mode,
                     const MixDeps& deps, std::uint64_t seed);

}  // namespace smsmix

#endif  // SMSMIX_MIXER_HPP_
