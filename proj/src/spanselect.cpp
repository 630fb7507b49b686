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

#include "smsmix/spanselect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smsmix {

Span sense_maintained_span(std::span<const double> saliency,
                           std::size_t target_index) {
  if (target_index >= saliency.size()) {
    throw std::out_of_range("target index " + std::to_string(target_index) +
                            " outside saliency vector of length " +
                            std::to_string(saliency.size()));
  }
  Span span{target_index, target_index};
  // Walk outward from the target; strict > keeps the nearest index on ties.
  if (target_index > 0) {
    std::size_t best = target_index - 1;
    for (std::size_t i = target_index - 1; i-- > 0;) {
      if (saliency[i] > saliency[best]) best = i;
    }
    span.start = best;
  }
  if (target_index + 1 < saliency.size()) {
    std::size_t best = target_index + 1;
    for (std::size_t i = target_index + 2; i < saliency.size(); ++i) {
      if (saliency[i] > saliency[best]) best = i;
    }
    span.end = best;
  }
  return span;
}

Span random_span(std::size_t sentence_len, Rng& rng, double max_fraction) {
  if (sentence_len == 0) throw std::invalid_argument("empty sentence");
  if (!(max_fraction > 0.0 && max_fraction <= 1.0)) {
    throw std::invalid_argument("max_fraction must lie in (0, 1]");
  }
  const auto cap = static_cast<std::size_t>(
      std::floor(static_cast<double>(sentence_len) * max_fraction));
  const std::size_t max_len = std::max<std::size_t>(1, cap);
  const std::size_t len = rng.uniform_between(1, max_len);
  const std::size_t start = rng.uniform(sentence_len - len + 1);
  return Span{start, start + len - 1};
}

}  // namespace smsmix
