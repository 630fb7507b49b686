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

#include "smsmix/reference_backends.hpp"

#include <array>

#include "smsmix/rng.hpp"
#include "smsmix/text.hpp"

namespace smsmix {
namespace {

constexpr std::string_view kSentinelPrefix = "<extra_id_";

const std::array<std::vector<std::string>, 8>& connectives() {
  static const std::array<std::vector<std::string>, 8> table = {{
      {"and"},
      {"of", "the"},
      {"with"},
      {"that"},
      {"in", "the"},
      {"as", "well", "as"},
      {"through"},
      {"while"},
  }};
  return table;
}

}  // namespace

std::string sentinel(std::size_t i) {
  return std::string(kSentinelPrefix) + std::to_string(i) + ">";
}

bool is_sentinel(std::string_view token) {
  if (token.size() <= kSentinelPrefix.size() + 1) return false;
  if (token.substr(0, kSentinelPrefix.size()) != kSentinelPrefix) return false;
  if (token.back() != '>') return false;
  const auto digits = token.substr(kSentinelPrefix.size(),
                                   token.size() - kSentinelPrefix.size() - 1);
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Infills TemplateInfiller::infill(const MaskedText& masked) const {
  Infills out(masked.sentinel_positions.size());
  if (mode_ == Mode::kIdentity) return out;
  const auto& table = connectives();
  for (std::size_t s = 0; s < masked.sentinel_positions.size(); ++s) {
    const std::size_t p = masked.sentinel_positions[s];
    const std::string left = p > 0 ? to_lower(masked.tokens[p - 1]) : "<s>";
    const std::string right = p + 1 < masked.tokens.size()
                                  ? to_lower(masked.tokens[p + 1])
                                  : "</s>";
    const std::uint64_t h =
        fnv1a64(left + '\x1f' + right + '\x1f' + std::to_string(s));
    out[s] = table[h % table.size()];
  }
  return out;
}

bool RuleJudge::accept(const Sentence& sentence) const {
  const auto& toks = sentence.tokens;
  if (toks.size() < options_.min_len || toks.size() > options_.max_len) {
    return false;
  }
  std::size_t run = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (is_sentinel(toks[i])) return false;
    run = (i > 0 && to_lower(toks[i]) == to_lower(toks[i - 1])) ? run + 1 : 1;
    if (run > options_.max_repeat_run) return false;
  }
  return true;
}

}  // namespace smsmix
