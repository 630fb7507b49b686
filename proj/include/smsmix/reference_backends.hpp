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

#ifndef SMSMIX_REFERENCE_BACKENDS_HPP_
#define SMSMIX_REFERENCE_BACKENDS_HPP_

#include "smsmix/backends.hpp"

namespace smsmix {

// Deterministic stand-in for a span-infilling language model. Each sentinel
// gets a short connective chosen by hashing its neighbouring tokens. In
// identity mode every infill is empty.
class TemplateInfiller final : public InfillEngine {
 public:
  enum class Mode { kTemplate, kIdentity };

  explicit TemplateInfiller(Mode mode = Mode::kTemplate) : mode_(mode) {}
  Infills infill(const MaskedText& masked) const override;
  Mode mode() const { return mode_; }

 private:
  Mode mode_;
};

struct RuleJudgeOptions {
  std::size_t min_len = 5;
  std::size_t max_len = 100;
  std::size_t max_repeat_run = 3;
};

// Rejects residual sentinels, lengths outside [min_len, max_len] and runs of
// the same token longer than max_repeat_run.
class RuleJudge final : public AcceptabilityJudge {
 public:
  explicit RuleJudge(RuleJudgeOptions options = {}) : options_(options) {}
  bool accept(const Sentence& sentence) const override;

 private:
  RuleJudgeOptions options_;
};

class AcceptAllJudge final : public AcceptabilityJudge {
 public:
  bool accept(const Sentence&) const override { return true; }
};

}  // namespace smsmix

#endif  // SMSMIX_REFERENCE_BACKENDS_HPP_
