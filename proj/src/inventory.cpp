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

#include "smsmix/inventory.hpp"

#include <algorithm>
#include <fstream>

#include "smsmix/error.hpp"
#include "smsmix/text.hpp"

namespace smsmix {

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return "NOUN";
    case Pos::kVerb:
      return "VERB";
    case Pos::kAdj:
      return "ADJ";
    case Pos::kAdv:
      return "ADV";
  }
  return "NOUN";
}

std::optional<Pos> parse_pos(std::string_view text) {
  const std::string t = to_lower(text);
  if (t == "noun" || t == "n") return Pos::kNoun;
  if (t == "verb" || t == "v") return Pos::kVerb;
  if (t == "adj" || t == "a" || t == "s") return Pos::kAdj;
  if (t == "adv" || t == "r") return Pos::kAdv;
  return std::nullopt;
}

void SenseInventory::add(SenseEntry entry) {
  if (entry.key.empty()) throw DataError("empty sense key");
  if (entry.gloss.empty()) {
    throw DataError("empty gloss for sense key: " + entry.key.value);
  }
  if (index_.count(entry.key)) throw DuplicateKey(entry.key.value);
  entry.lemma = to_lower(entry.lemma);
  LemmaPos lp{entry.lemma, entry.pos};
  index_.emplace(entry.key, lp);
  auto& bucket = buckets_[lp];
  const auto at = std::lower_bound(
      bucket.begin(), bucket.end(), entry.key,
      [](const SenseEntry& e, const SenseKey& k) { return e.key < k; });
  bucket.insert(at, std::move(entry));
}

const std::vector<SenseEntry>& SenseInventory::senses_of(
    std::string_view lemma, Pos pos) const {
  static const std::vector<SenseEntry> kEmpty;
  const auto it = buckets_.find(LemmaPos{to_lower(lemma), pos});
  return it == buckets_.end() ? kEmpty : it->second;
}

const SenseEntry* SenseInventory::find(const SenseKey& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  const auto& bucket = buckets_.at(it->second);
  const auto e = std::lower_bound(
      bucket.begin(), bucket.end(), key,
      [](const SenseEntry& s, const SenseKey& k) { return s.key < k; });
  return &*e;
}

const std::string& SenseInventory::gloss_of(const SenseKey& key) const {
  const SenseEntry* e = find(key);
  if (e == nullptr) throw UnknownSense(key.value);
  return e->gloss;
}

SenseInventory load_inventory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open inventory file: " + path.string());
  SenseInventory inv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto where = [&] {
      return path.string() + ":" + std::to_string(line_no);
    };
    auto fields = split(line, '\t', 4);
    if (fields.size() != 4) {
      throw ParseError(where() + ": expected 4 tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    const auto pos = parse_pos(fields[2]);
    if (!pos) throw ParseError(where() + ": unknown POS '" + fields[2] + "'");
    if (trim(fields[0]).empty() || trim(fields[1]).empty()) {
      throw ParseError(where() + ": empty sense key or lemma");
    }
    const std::string gloss(trim(fields[3]));
    if (gloss.empty()) throw ParseError(where() + ": empty gloss");
    inv.add(SenseEntry{SenseKey(std::string(trim(fields[0]))),
                       std::string(trim(fields[1])), *pos, gloss});
  }
  return inv;
}

}  // namespace smsmix
