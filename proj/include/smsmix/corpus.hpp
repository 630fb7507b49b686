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

#ifndef SMSMIX_CORPUS_HPP_
#define SMSMIX_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "smsmix/inventory.hpp"
#include "smsmix/rng.hpp"

namespace smsmix {

struct Sentence {
  std::vector<std::string> tokens;
  std::string source_id;

  bool operator==(const Sentence&) const = default;
};

using SentencePtr = std::shared_ptr<const Sentence>;

struct AnnotatedInstance {
  std::string instance_id;
  SentencePtr sentence;
  std::size_t target_index = 0;
  std::string lemma;
  Pos pos = Pos::kNoun;
  SenseKey gold;
  // Further keys listed on the gold line. Scoring credits them; training and
  // frequency counts use `gold` only.
  std::vector<SenseKey> extra_gold;

  const std::string& target_token() const {
    return sentence->tokens.at(target_index);
  }
  LemmaPos lemma_pos() const { return {lemma, pos}; }
};

struct AnnotatedCorpus {
  std::vector<AnnotatedInstance> instances;
  std::map<std::string, SentencePtr> sentences;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
};

// Throws DataError if an instance id repeats, a target index is out of range,
// or an instance's sentence is absent from the sentence map.
void validate(const AnnotatedCorpus& corpus);

// Unified WSD XML plus a gold key file. Throws ParseError (with location) and
// MissingGold.
AnnotatedCorpus load_annotated_corpus(const std::filesystem::path& xml_path,
                                      const std::filesystem::path& gold_path);

// Writes the corpus back out in the same two-file format.
void write_annotated_corpus(const AnnotatedCorpus& corpus,
                            const std::filesystem::path& xml_path,
                            const std::filesystem::path& gold_path);

struct FrequencyTable {
  std::map<LemmaPos, std::map<SenseKey, std::size_t>> counts;
  std::map<LemmaPos, SenseKey> mfs;

  std::size_t count(const LemmaPos& lp, const SenseKey& key) const;
  const SenseKey* mfs_of(const LemmaPos& lp) const;
  std::size_t distinct_senses() const;
  // Stable text rendering, one `lemma\tpos\tkey\tcount\tis_mfs` row per entry.
  std::string serialize() const;
};

// Exact tallies of first gold keys; MFS ties go to the smallest key.
FrequencyTable sense_frequencies(const AnnotatedCorpus& corpus);

struct TargetSense {
  LemmaPos lemma_pos;
  SenseKey key;

  auto operator<=>(const TargetSense&) const = default;
  bool operator==(const TargetSense&) const = default;
};

// Every attested non-MFS sense, ordered by (lemma, pos, key).
std::vector<TargetSense> lfs_senses(const FrequencyTable& table);

// Instance positions grouped by (lemma, pos, gold key), for repeated sampling
// over large corpora.
class SenseIndex {
 public:
  explicit SenseIndex(const AnnotatedCorpus& corpus);
  const std::vector<std::size_t>& instances_of(const TargetSense& sense) const;

 private:
  std::map<TargetSense, std::vector<std::size_t>> by_sense_;
};

// Uniform draw among instances of (lemma, pos) labeled with that pair's MFS.
// Throws NoHostAvailable.
const AnnotatedInstance& mfs_host_instance(const AnnotatedCorpus& corpus,
                                           const FrequencyTable& table,
                                           const std::string& lemma, Pos pos,
                                           Rng& rng);
const AnnotatedInstance& mfs_host_instance(const AnnotatedCorpus& corpus,
                                           const SenseIndex& index,
                                           const FrequencyTable& table,
                                           const std::string& lemma, Pos pos,
                                           Rng& rng);

struct ExternalCorpusOptions {
  std::size_t min_len = 5;
  std::size_t max_len = 100;
};

struct ExternalCorpus {
  std::vector<Sentence> sentences;
  std::size_t dropped = 0;  // lines rejected by the length bounds
};

// One pre-tokenized sentence per line. Blank lines are skipped; lines whose
// token count falls outside [min_len, max_len] are dropped.
ExternalCorpus load_external_corpus(const std::filesystem::path& path,
                                    const ExternalCorpusOptions& options = {});

// Throws EmptyCorpus.
const Sentence& sample_external(const ExternalCorpus& ext, Rng& rng);

}  // namespace smsmix

#endif  // SMSMIX_CORPUS_HPP_
