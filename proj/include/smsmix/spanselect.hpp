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

#ifndef SMSMIX_SPANSELECT_HPP_
#define SMSMIX_SPANSELECT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "smsmix/rng.hpp"

namespace smsmix {

// Per-word-token relevance scores, nonnegative and finite.
using SaliencyVector = std::vector<double>;

// Inclusive token interval.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool contains(std::size_t i) const { return start <= i && i <= end; }
  bool operator==(const Span&) const = default;
};

// Span bounded by the most salient token on each side of the target. Ties go
// to the index closest to the target; an empty side collapses to the target.
Span sense_maintained_span(std::span<const double> saliency,
                           std::size_t target_index);

// Random span whose length is uniform in
// [1, max(1, floor(sentence_len * max_fraction))] and whose start is uniform
// over the positions where that length fits.
Span random_span(std::size_t sentence_len, Rng& rng,
                 double max_fraction = 0.5);

}  // namespace smsmix

#endif  // SMSMIX_SPANSELECT_HPP_
