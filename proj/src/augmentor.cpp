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

#include "smsmix/augmentor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "smsmix/error.hpp"

namespace smsmix {
namespace {

std::string sense_tag(const TargetSense& t) {
  return t.lemma_pos.lemma + "/" + std::string(to_string(t.lemma_pos.pos)) +
         "/" + t.key.value;
}

struct TargetResult {
  std::vector<AugmentedExample> accepted;
  std::vector<AugmentedExample> rejected;
  GenerationStats stats;
};

bool is_candidate(const SenseInventory& inventory, const LemmaPos& lp,
                  const SenseKey& key) {
  for (const auto& e : inventory.senses_of(lp.lemma, lp.pos)) {
    if (e.key == key) return true;
  }
  return false;
}

// Saliency needs the label among the inventory candidates, so an MFS whose
// key the inventory lacks offers no usable host.
bool has_mfs_host(const SenseIndex& index, const FrequencyTable& table,
                  const SenseInventory& inventory, const LemmaPos& lp) {
  const SenseKey* top = table.mfs_of(lp);
  return top != nullptr && is_candidate(inventory, lp, *top) &&
         !index.instances_of({lp, *top}).empty();
}

TargetResult generate_one(const AnnotatedCorpus& corpus,
                          const SenseIndex& index, const TargetSense& target,
                          const AugmentationPlan& plan, const MixDeps& deps) {
  TargetResult out;
  std::vector<std::size_t> sources = index.instances_of(target);
  if (sources.empty() ||
      !is_candidate(*deps.inventory, target.lemma_pos, target.key) ||
      (plan.mode == InjectionMode::kInternal &&
       !has_mfs_host(index, *deps.table, *deps.inventory, target.lemma_pos))) {
    out.stats.skipped_senses = 1;
    return out;
  }
  const std::string tag = sense_tag(target);
  Rng order = Rng::derive(plan.seed, "sources:" + tag);
  order.shuffle(sources.begin(), sources.end());

  for (std::size_t slot = 0; slot < plan.per_sense; ++slot) {
    const auto& source = corpus.instances[sources[slot % sources.size()]];
    for (std::size_t attempt = 0; attempt <= plan.retry_limit; ++attempt) {
      const std::uint64_t seed =
          Rng::derive(plan.seed, "mix:" + tag, slot, attempt).next();
      AugmentedExample ex = mix(source, plan.mode, deps, seed);
      ++out.stats.attempted;
      if (ex.accepted) {
        ++out.stats.accepted;
        out.accepted.push_back(std::move(ex));
        break;
      }
      ++out.stats.rejected;
      out.rejected.push_back(std::move(ex));
    }
  }
  return out;
}

void add_stats(GenerationStats& into, const GenerationStats& s) {
  into.attempted += s.attempted;
  into.accepted += s.accepted;
  into.rejected += s.rejected;
  into.skipped_senses += s.skipped_senses;
}

}  // namespace

std::string_view to_string(SelectionPolicy policy) {
  return policy == SelectionPolicy::kRarest ? "rarest" : "random";
}

std::optional<SelectionPolicy> parse_selection_policy(std::string_view text) {
  if (text == "random") return SelectionPolicy::kRandom;
  if (text == "rarest") return SelectionPolicy::kRarest;
  return std::nullopt;
}

std::vector<TargetSense> select_lfs_targets(const FrequencyTable& table,
                                            double lfs_fraction, Rng& rng,
                                            SelectionPolicy policy) {
  if (!(lfs_fraction > 0.0 && lfs_fraction <= 1.0)) {
    throw ConfigError("lfs_fraction must lie in (0, 1]");
  }
  std::vector<TargetSense> pool = lfs_senses(table);
  const auto k = static_cast<std::size_t>(
      std::ceil(lfs_fraction * static_cast<double>(pool.size())));
  if (policy == SelectionPolicy::kRarest) {
    std::stable_sort(pool.begin(), pool.end(),
                     [&](const TargetSense& a, const TargetSense& b) {
                       return table.count(a.lemma_pos, a.key) <
                              table.count(b.lemma_pos, b.key);
                     });
  } else {
    rng.shuffle(pool.begin(), pool.end());
  }
  pool.resize(std::min(k, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

AugmentedDataset generate(const AnnotatedCorpus& corpus,
                          const AugmentationPlan& plan, const MixDeps& deps,
                          std::size_t workers) {
  if (plan.mode == InjectionMode::kOversample) {
    throw ConfigError("generate: use oversample() for the oversample regime");
  }
  if (plan.per_sense == 0) throw ConfigError("per_sense must be >= 1");
  if (deps.inventory == nullptr) {
    throw ConfigError("generate: missing dependency 'inventory'");
  }
  const SenseIndex local_index(corpus);
  const FrequencyTable local_table =
      deps.table ? FrequencyTable{} : sense_frequencies(corpus);
  MixDeps wired = deps;
  wired.corpus = &corpus;
  wired.index = &local_index;
  if (wired.table == nullptr) wired.table = &local_table;
  wired.max_fraction = plan.max_fraction;

  const bool concurrent =
      (!deps.saliency || deps.saliency->concurrent_safe()) &&
      (!deps.infill || deps.infill->concurrent_safe()) &&
      (!deps.judge || deps.judge->concurrent_safe());
  const std::size_t n = plan.targets.size();
  workers = std::clamp<std::size_t>(concurrent ? workers : 1, 1,
                                    std::max<std::size_t>(n, 1));

  std::vector<TargetResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] =
            generate_one(corpus, local_index, plan.targets[i], plan, wired);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  AugmentedDataset out;
  out.plan = plan;
  for (auto& r : results) {
    add_stats(out.stats, r.stats);
    std::move(r.accepted.begin(), r.accepted.end(),
              std::back_inserter(out.examples));
    std::move(r.rejected.begin(), r.rejected.end(),
              std::back_inserter(out.rejected));
  }
  return out;
}

AugmentedDataset oversample(const AnnotatedCorpus& corpus,
                            const AugmentationPlan& plan) {
  if (plan.per_sense == 0) throw ConfigError("per_sense must be >= 1");
  const SenseIndex index(corpus);
  AugmentedDataset out;
  out.plan = plan;
  out.plan.mode = InjectionMode::kOversample;
  for (const auto& target : plan.targets) {
    const auto& sources = index.instances_of(target);
    if (sources.empty()) {
      ++out.stats.skipped_senses;
      continue;
    }
    Rng rng = Rng::derive(plan.seed, "oversample:" + sense_tag(target));
    for (std::size_t slot = 0; slot < plan.per_sense; ++slot) {
      const auto& src = corpus.instances[sources[rng.uniform(sources.size())]];
      const std::size_t len = src.sentence->tokens.size();
      AugmentedExample ex;
      ex.sentence = *src.sentence;
      ex.sentence.source_id =
          "smsmix:" + src.instance_id + ":" + std::to_string(plan.seed);
      ex.target_index = src.target_index;
      ex.lemma = src.lemma;
      ex.pos = src.pos;
      ex.label = src.gold;
      ex.provenance.source_instance_id = src.instance_id;
      ex.provenance.host_id = src.instance_id;
      ex.provenance.donor_span = Span{0, len - 1};
      ex.provenance.host_span = Span{0, len - 1};
      ex.provenance.mode = InjectionMode::kOversample;
      ex.provenance.seed = plan.seed;
      ex.accepted = true;
      out.examples.push_back(std::move(ex));
      ++out.stats.attempted;
      ++out.stats.accepted;
    }
  }
  return out;
}

AnnotatedCorpus assemble_training_set(const AnnotatedCorpus& original,
                                      const AugmentedDataset& augmented) {
  AnnotatedCorpus out = original;
  std::set<std::string> taken;
  for (const auto& inst : original.instances) taken.insert(inst.instance_id);
  std::size_t n = 0;
  for (const auto& ex : augmented.examples) {
    if (!ex.accepted) continue;
    const std::string base = "smsmix:" + std::to_string(n++) + ":" +
                             ex.provenance.source_instance_id;
    std::string id = base;
    for (std::size_t k = 2; taken.count(id) || out.sentences.count(id); ++k) {
      id = base + "#" + std::to_string(k);
    }
    taken.insert(id);
    auto sentence = std::make_shared<Sentence>(ex.sentence);
    sentence->source_id = id;
    out.sentences.emplace(id, sentence);
    AnnotatedInstance inst;
    inst.instance_id = id;
    inst.sentence = std::move(sentence);
    inst.target_index = ex.target_index;
    inst.lemma = ex.lemma;
    inst.pos = ex.pos;
    inst.gold = ex.label;
    out.instances.push_back(std::move(inst));
  }
  return out;
}

}  // namespace smsmix
