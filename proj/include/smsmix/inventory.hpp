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

#ifndef SMSMIX_INVENTORY_HPP_
#define SMSMIX_INVENTORY_HPP_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smsmix {

enum class Pos { kNoun, kVerb, kAdj, kAdv };

std::string_view to_string(Pos pos);
// Accepts NOUN/VERB/ADJ/ADV (any case) and the WordNet letters n/v/a/r/s.
std::optional<Pos> parse_pos(std::string_view text);

// Opaque sense identifier, e.g. "plant%1:03:00::".
struct SenseKey {
  std::string value;

  SenseKey() = default;
  explicit SenseKey(std::string v) : value(std::move(v)) {}

  bool empty() const { return value.empty(); }
  auto operator<=>(const SenseKey&) const = default;
  bool operator==(const SenseKey&) const = default;
};

// A (lemma, POS) bucket. Lemmas are stored lowercased.
struct LemmaPos {
  std::string lemma;
  Pos pos = Pos::kNoun;

  auto operator<=>(const LemmaPos&) const = default;
  bool operator==(const LemmaPos&) const = default;
};

struct SenseEntry {
  SenseKey key;
  std::string lemma;
  Pos pos = Pos::kNoun;
  std::string gloss;
};

// The universe of sense keys and the lemma/POS -> candidate mapping.
// Immutable after construction; safe for concurrent reads.
class SenseInventory {
 public:
  SenseInventory() = default;

  // Throws DuplicateKey if the key is already present, DataError if the
  // gloss or key is empty.
  void add(SenseEntry entry);

  // Candidates for (lemma, pos) in key order; lemma is matched
  // case-insensitively. Unknown pairs yield an empty list.
  const std::vector<SenseEntry>& senses_of(std::string_view lemma,
                                           Pos pos) const;

  // Throws UnknownSense.
  const std::string& gloss_of(const SenseKey& key) const;
  const SenseEntry* find(const SenseKey& key) const;

  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  const std::map<LemmaPos, std::vector<SenseEntry>>& buckets() const {
    return buckets_;
  }

 private:
  std::map<LemmaPos, std::vector<SenseEntry>> buckets_;
  std::map<SenseKey, LemmaPos> index_;
};

// Reads `<sense_key>\t<lemma>\t<pos>\t<gloss>` lines. Blank lines and lines
// starting with '#' are ignored. Throws ParseError naming the line number,
// DuplicateKey naming the key.
SenseInventory load_inventory(const std::filesystem::path& path);

}  // namespace smsmix

#endif  // SMSMIX_INVENTORY_HPP_
