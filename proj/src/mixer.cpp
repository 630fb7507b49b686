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

#include "smsmix/mixer.hpp"

#include <cmath>

#include "smsmix/error.hpp"
#include "smsmix/spanselect.hpp"

namespace smsmix {
namespace {

// Runs one pipeline stage, prefixing any error with the stage name while
// keeping its type.
template <typename F>
auto staged(std::string_view stage, F&& f) -> decltype(f()) {
  const auto tag = [&](const std::exception& e) {
    return "stage " + std::string(stage) + ": " + e.what();
  };
  try {
    return f();
  } catch (const BackendContractViolation& e) {
    throw BackendContractViolation(tag(e));
  } catch (const BackendError& e) {
    throw BackendError(tag(e));
  } catch (const LabelNotCandidate& e) {
    throw LabelNotCandidate(tag(e));
  } catch (const NoHostAvailable& e) {
    throw NoHostAvailable(tag(e));
  } catch (const EmptyCorpus& e) {
    throw EmptyCorpus(tag(e));
  }
}

SaliencyVector checked_saliency(const SaliencyBackend& backend,
                                const AnnotatedInstance& instance,
                                const SenseInventory& inventory) {
  const auto& cands = inventory.senses_of(instance.lemma, instance.pos);
  SaliencyVector s = backend.token_saliency(instance, cands);
  if (s.size() != instance.sentence->tokens.size()) {
    throw BackendContractViolation(
        "saliency length " + std::to_string(s.size()) + " != sentence length " +
        std::to_string(instance.sentence->tokens.size()));
  }
  for (double v : s) {
    if (!std::isfinite(v) || v < 0.0) {
      throw BackendContractViolation("saliency score not finite/nonnegative");
    }
  }
  return s;
}

void require(const void* dep, const char* name) {
  if (dep == nullptr) {
    throw ConfigError(std::string("mix: missing dependency '") + name + "'");
  }
}

}  // namespace

std::string_view to_string(InjectionMode mode) {
  switch (mode) {
    case InjectionMode::kOversample:
      return "oversample";
    case InjectionMode::kInternal:
      return "internal";
    case InjectionMode::kExternal:
      return "external";
  }
  return "external";
}

std::optional<InjectionMode> parse_injection_mode(std::string_view text) {
  if (text == "oversample") return InjectionMode::kOversample;
  if (text == "internal") return InjectionMode::kInternal;
  if (text == "external") return InjectionMode::kExternal;
  return std::nullopt;
}

std::vector<std::string> place_masks(std::span<const std::string> donor) {
  std::vector<std::string> out;
  out.reserve(donor.size() + 2);
  out.push_back(sentinel(0));
  out.insert(out.end(), donor.begin(), donor.end());
  out.push_back(sentinel(1));
  return out;
}

MaskedText inject(const Sentence& host, Span host_span,
                  std::span<const std::string> masked_donor,
                  std::size_t target_in_donor) {
  const auto& toks = host.tokens;
  if (host_span.start > host_span.end || host_span.end >= toks.size()) {
    throw SpanOutOfRange("host span [" + std::to_string(host_span.start) +
                         ", " + std::to_string(host_span.end) +
                         "] outside host of length " +
                         std::to_string(toks.size()));
  }
  if (target_in_donor >= masked_donor.size()) {
    throw SpanOutOfRange("target offset outside donor block");
  }
  MaskedText out;
  out.tokens.reserve(toks.size() - host_span.length() + masked_donor.size());
  out.tokens.insert(out.tokens.end(), toks.begin(),
                    toks.begin() + static_cast<std::ptrdiff_t>(host_span.start));
  const std::size_t block = out.tokens.size();
  std::size_t first_word = masked_donor.size();
  std::size_t last_word = 0;
  for (std::size_t i = 0; i < masked_donor.size(); ++i) {
    if (is_sentinel(masked_donor[i])) {
      out.sentinel_positions.push_back(block + i);
    } else {
      first_word = std::min(first_word, i);
      last_word = i;
    }
    out.tokens.push_back(masked_donor[i]);
  }
  out.tokens.insert(
      out.tokens.end(),
      toks.begin() + static_cast<std::ptrdiff_t>(host_span.end + 1), toks.end());
  if (first_word == masked_donor.size()) {
    throw SpanOutOfRange("donor block has no word tokens");
  }
  out.donor_span = Span{block + first_word, block + last_word};
  out.target_offset = block + target_in_donor;
  return out;
}

SmoothResult smooth(const InfillEngine& engine, const MaskedText& masked) {
  SmoothResult out;
  out.infills = engine.infill(masked);
  if (out.infills.size() != masked.sentinel_positions.size()) {
    throw BackendContractViolation(
        "infill engine returned " + std::to_string(out.infills.size()) +
        " infills for " + std::to_string(masked.sentinel_positions.size()) +
        " sentinels");
  }
  for (const auto& fill : out.infills) {
    for (const auto& t : fill) {
      if (is_sentinel(t)) {
        throw BackendContractViolation("infill contains sentinel " + t);
      }
    }
  }
  auto& toks = out.sentence.tokens;
  std::size_t next = 0;
  for (std::size_t i = 0; i < masked.tokens.size(); ++i) {
    if (i == masked.target_offset) out.target_index = toks.size();
    if (next < masked.sentinel_positions.size() &&
        masked.sentinel_positions[next] == i) {
      for (const auto& t : out.infills[next]) toks.push_back(t);
      ++next;
    } else {
      toks.push_back(masked.tokens[i]);
    }
  }
  return out;
}

AugmentedExample mix(const AnnotatedInstance& source, InjectionMode mode,
                     const MixDeps& deps, std::uint64_t seed) {
  require(deps.saliency, "saliency");
  require(deps.infill, "infill");
  require(deps.judge, "judge");
  require(deps.inventory, "inventory");
  if (mode == InjectionMode::kOversample) {
    throw ConfigError("mix: oversample mode does not mix sentences");
  }
  Rng rng(seed);

  const SaliencyVector s = staged("saliency", [&] {
    return checked_saliency(*deps.saliency, source, *deps.inventory);
  });
  const Span donor_span = sense_maintained_span(s, source.target_index);
  const auto& src = source.sentence->tokens;
  const std::span<const std::string> donor(src.data() + donor_span.start,
                                           donor_span.length());
  const auto masked_donor = place_masks(donor);

  Provenance prov;
  prov.source_instance_id = source.instance_id;
  prov.donor_span = donor_span;
  prov.mode = mode;
  prov.seed = seed;

  const Sentence* host = nullptr;
  if (mode == InjectionMode::kInternal) {
    require(deps.corpus, "corpus");
    require(deps.table, "table");
    const AnnotatedInstance& host_inst = staged("host", [&]() -> const AnnotatedInstance& {
      return deps.index ? mfs_host_instance(*deps.corpus, *deps.index,
                                            *deps.table, source.lemma,
                                            source.pos, rng)
                        : mfs_host_instance(*deps.corpus, *deps.table,
                                            source.lemma, source.pos, rng);
    });
    const SaliencyVector hs = staged("host-saliency", [&] {
      return checked_saliency(*deps.saliency, host_inst, *deps.inventory);
    });
    prov.host_span = sense_maintained_span(hs, host_inst.target_index);
    prov.host_id = host_inst.instance_id;
    prov.host_saliency_label = host_inst.gold.value;
    host = host_inst.sentence.get();
  } else {
    require(deps.external, "external");
    host = &staged("host", [&]() -> const Sentence& {
      return sample_external(*deps.external, rng);
    });
    prov.host_span = random_span(host->tokens.size(), rng, deps.max_fraction);
    prov.host_id = host->source_id;
  }

  const MaskedText masked =
      inject(*host, prov.host_span, masked_donor,
             1 + source.target_index - donor_span.start);
  SmoothResult smoothed =
      staged("smooth", [&] { return smooth(*deps.infill, masked); });
  smoothed.sentence.source_id =
      "smsmix:" + source.instance_id + ":" + std::to_string(seed);
  const bool verdict =
      staged("judge", [&] { return deps.judge->accept(smoothed.sentence); });

  prov.infills = std::move(smoothed.infills);
  prov.judge_verdict = verdict;

  AugmentedExample out;
  out.sentence = std::move(smoothed.sentence);
  out.target_index = smoothed.target_index;
  out.lemma = source.lemma;
  out.pos = source.pos;
  out.label = source.gold;
  out.provenance = std::move(prov);
  out.accepted = verdict;
  return out;
}

}  // namespace smsmix
