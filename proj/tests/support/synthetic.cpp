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

#include "synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "smsmix/rng.hpp"

namespace smsmix::testing {
namespace {

std::string padded(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06zu", n);
  return buf;
}

std::string cue(std::size_t lemma, std::size_t sense, std::size_t k) {
  return "cue" + std::to_string(lemma) + "x" + std::to_string(sense) + "x" +
         std::to_string(k);
}

std::string filler(Rng& rng, std::size_t vocab) {
  return "w" + std::to_string(rng.uniform(vocab));
}

// One sentence containing the target with a cue word nearby.
void add_instance(AnnotatedCorpus& corpus, const std::string& prefix,
                  std::size_t lemma, std::size_t sense,
                  const SyntheticOptions& o, Rng& rng) {
  const std::size_t n = corpus.instances.size();
  const std::string sid = prefix + ".s" + padded(n);
  auto sentence = std::make_shared<Sentence>();
  sentence->source_id = sid;
  const std::size_t len = rng.uniform_between(o.min_len, o.max_len);
  for (std::size_t i = 0; i < len; ++i) {
    sentence->tokens.push_back(filler(rng, o.filler_vocab));
  }
  const std::size_t target = rng.uniform_between(2, len - 3);
  sentence->tokens[target] = lemma_name(lemma);
  const std::size_t offset = rng.uniform_between(1, 2);
  const std::size_t at =
      rng.uniform(2) == 0 ? target - offset : target + offset;
  sentence->tokens[at] = cue(lemma, sense, rng.uniform(o.cue_words));

  AnnotatedInstance inst;
  inst.instance_id = sid + ".t000";
  inst.sentence = sentence;
  inst.target_index = target;
  inst.lemma = lemma_name(lemma);
  inst.pos = Pos::kNoun;
  inst.gold = sense_key(lemma, sense);
  corpus.sentences.emplace(sid, sentence);
  corpus.instances.push_back(std::move(inst));
}

}  // namespace

std::string lemma_name(std::size_t lemma) {
  return "lemma" + std::to_string(lemma);
}

SenseKey sense_key(std::size_t lemma, std::size_t sense) {
  return SenseKey(lemma_name(lemma) + "%1:0" + std::to_string(sense) + ":00::");
}

SyntheticData make_synthetic(const SyntheticOptions& o) {
  SyntheticData data;
  const std::size_t senses = o.skew.size();
  for (std::size_t l = 0; l < o.lemmas; ++l) {
    for (std::size_t s = 0; s < senses; ++s) {
      std::string gloss = "meaning";
      for (std::size_t k = 0; k < o.cue_words; ++k) gloss += " " + cue(l, s, k);
      data.inventory.add({sense_key(l, s), lemma_name(l), Pos::kNoun, gloss});
    }
  }

  double total = 0.0;
  for (double w : o.skew) total += w;
  const std::size_t per_lemma = o.train_instances / o.lemmas;
  std::vector<std::pair<std::size_t, std::size_t>> plan;  // (lemma, sense)
  for (std::size_t l = 0; l < o.lemmas; ++l) {
    std::size_t used = 0;
    for (std::size_t s = 0; s < senses; ++s) {
      std::size_t count =
          s + 1 == senses
              ? per_lemma - used
              : static_cast<std::size_t>(std::llround(per_lemma * o.skew[s] / total));
      count = std::min(count, per_lemma - used);
      used += count;
      data.train_counts.emplace_back(sense_key(l, s), count);
      for (std::size_t i = 0; i < count; ++i) plan.emplace_back(l, s);
    }
  }

  Rng rng = Rng::derive(o.seed, "synthetic");
  rng.shuffle(plan.begin(), plan.end());
  for (const auto& [l, s] : plan) add_instance(data.train, "train", l, s, o, rng);

  Rng held = Rng::derive(o.seed, "synthetic-heldout");
  for (std::size_t l = 0; l < o.lemmas; ++l) {
    for (std::size_t s = 0; s < senses; ++s) {
      for (std::size_t i = 0; i < o.heldout_per_sense; ++i) {
        add_instance(data.heldout, "held", l, s, o, held);
      }
    }
  }

  Rng ext = Rng::derive(o.seed, "synthetic-external");
  for (std::size_t i = 0; i < o.external_sentences; ++i) {
    Sentence s;
    s.source_id = "ext:" + std::to_string(i + 1);
    const std::size_t len = ext.uniform_between(o.min_len, o.max_len);
    for (std::size_t k = 0; k < len; ++k) {
      s.tokens.push_back(filler(ext, o.filler_vocab));
    }
    data.external.sentences.push_back(std::move(s));
  }
  return data;
}

void write_inventory(const SenseInventory& inventory,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  for (const auto& [lp, entries] : inventory.buckets()) {
    for (const auto& e : entries) {
      out << e.key.value << '\t' << e.lemma << '\t' << to_string(e.pos) << '\t'
          << e.gloss << '\n';
    }
  }
}

void write_external(const ExternalCorpus& external,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  for (const auto& s : external.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out << (i ? " " : "") << s.tokens[i];
    }
    out << '\n';
  }
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("smsmix-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace smsmix::testing
