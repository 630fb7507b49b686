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

#ifndef SMSMIX_PROCESS_ADAPTER_HPP_
#define SMSMIX_PROCESS_ADAPTER_HPP_

#include <cstdio>
#include <mutex>
#include <string>
#include <sys/types.h>

#include "smsmix/backends.hpp"

namespace smsmix {

// Talks to an external model process over stdin/stdout, one JSON object per
// line in each direction. Requests carry an "op" field:
//
//   hello    {}                                   -> {"dimension": d}
//   saliency {tokens, target_index, lemma, pos, gold,
//             candidates: [{key, gloss}]}         -> {"scores": [...]}
//   infill   {tokens, sentinel_positions}         -> {"infills": [[...], ...]}
//   accept   {tokens}                             -> {"accept": bool}
//   encode   {tokens, target_index}               -> {"vector": [...]}
//
// A response may instead be {"error": "..."}. Any transport failure or error
// reply raises BackendError. Calls are serialised internally, and the adapter
// reports itself as not concurrency-safe.
class ProcessAdapter final : public SaliencyBackend,
                             public InfillEngine,
                             public AcceptabilityJudge,
                             public TargetEncoder {
 public:
  // Runs `command` through /bin/sh and performs the hello handshake.
  explicit ProcessAdapter(const std::string& command);
  ~ProcessAdapter() override;
  ProcessAdapter(const ProcessAdapter&) = delete;
  ProcessAdapter& operator=(const ProcessAdapter&) = delete;

  SaliencyVector token_saliency(
      const AnnotatedInstance& instance,
      std::span<const SenseEntry> candidates) const override;
  Infills infill(const MaskedText& masked) const override;
  bool accept(const Sentence& sentence) const override;
  std::vector<double> encode(const Sentence& sentence,
                             std::size_t target_index) const override;
  std::size_t dimension() const override { return dimension_; }

  bool concurrent_safe() const override { return false; }

 private:
  std::string call(const std::string& request) const;
  void shutdown();

  std::string command_;
  pid_t child_ = -1;
  FILE* to_child_ = nullptr;
  FILE* from_child_ = nullptr;
  std::size_t dimension_ = 0;
  mutable std::mutex mu_;
};

}  // namespace smsmix

#endif  // SMSMIX_PROCESS_ADAPTER_HPP_
