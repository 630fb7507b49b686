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

#include "smsmix/corpus.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "smsmix/error.hpp"
#include "smsmix/text.hpp"

namespace smsmix {
namespace {

namespace pt = boost::property_tree;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Multiword surface forms keep their words joined so a token never contains
// whitespace.
std::string surface_token(std::string_view text) {
  return join(split_whitespace(text), "_");
}

struct GoldLine {
  SenseKey first;
  std::vector<SenseKey> rest;
};

std::unordered_map<std::string, GoldLine> read_gold(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold key file: " + path.string());
  std::unordered_map<std::string, GoldLine> gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": gold line without a sense key");
    }
    GoldLine g;
    g.first = SenseKey(fields[1]);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      g.rest.emplace_back(fields[i]);
    }
    gold[fields[0]] = std::move(g);
  }
  return gold;
}

class XmlReader {
 public:
  XmlReader(const std::filesystem::path& xml_path,
            const std::unordered_map<std::string, GoldLine>& gold,
            AnnotatedCorpus& out)
      : path_(xml_path), gold_(gold), out_(out) {}

  void walk(const pt::ptree& node) {
    for (const auto& [tag, child] : node) {
      if (tag == "sentence") {
        read_sentence(child);
      } else if (tag != "<xmlattr>" && tag != "<xmlcomment>") {
        walk(child);
      }
    }
  }

 private:
  void read_sentence(const pt::ptree& node) {
    auto sentence = std::make_shared<Sentence>();
    sentence->source_id = node.get<std::string>(
        "<xmlattr>.id", "s" + std::to_string(out_.sentences.size()));
    const std::string& sid = sentence->source_id;
    std::vector<AnnotatedInstance> pending;
    for (const auto& [tag, child] : node) {
      if (tag != "wf" && tag != "instance") continue;
      std::string token = surface_token(child.data());
      if (token.empty()) {
        throw ParseError(path_.string() + ": sentence " + sid +
                         ": empty word element at token " +
                         std::to_string(sentence->tokens.size()));
      }
      if (tag == "instance") {
        const auto id = child.get_optional<std::string>("<xmlattr>.id");
        const auto lemma = child.get_optional<std::string>("<xmlattr>.lemma");
        const auto pos_text = child.get_optional<std::string>("<xmlattr>.pos");
        if (!id || !lemma || !pos_text) {
          throw ParseError(path_.string() + ": sentence " + sid +
                           ": instance element missing id/lemma/pos");
        }
        const auto pos = parse_pos(*pos_text);
        if (!pos) {
          throw ParseError(path_.string() + ": instance " + *id +
                           ": unknown POS '" + *pos_text + "'");
        }
        const auto g = gold_.find(*id);
        if (g == gold_.end()) throw MissingGold(*id);
        AnnotatedInstance inst;
        inst.instance_id = *id;
        inst.target_index = sentence->tokens.size();
        inst.lemma = to_lower(*lemma);
        inst.pos = *pos;
        inst.gold = g->second.first;
        inst.extra_gold = g->second.rest;
        pending.push_back(std::move(inst));
      }
      sentence->tokens.push_back(std::move(token));
    }
    if (sentence->tokens.empty()) return;
    if (out_.sentences.count(sid)) {
      throw ParseError(path_.string() + ": duplicate sentence id " + sid);
    }
    SentencePtr shared = sentence;
    out_.sentences.emplace(sid, shared);
    for (auto& inst : pending) {
      inst.sentence = shared;
      out_.instances.push_back(std::move(inst));
    }
  }

  const std::filesystem::path& path_;
  const std::unordered_map<std::string, GoldLine>& gold_;
  AnnotatedCorpus& out_;
};

}  // namespace

void validate(const AnnotatedCorpus& corpus) {
  std::set<std::string> ids;
  for (const auto& inst : corpus.instances) {
    if (!ids.insert(inst.instance_id).second) {
      throw DataError("duplicate instance id: " + inst.instance_id);
    }
    if (!inst.sentence || inst.target_index >= inst.sentence->tokens.size()) {
      throw DataError("target index out of range for " + inst.instance_id);
    }
    const auto it = corpus.sentences.find(inst.sentence->source_id);
    if (it == corpus.sentences.end()) {
      throw DataError("sentence " + inst.sentence->source_id +
                      " missing from corpus for " + inst.instance_id);
    }
  }
}

AnnotatedCorpus load_annotated_corpus(const std::filesystem::path& xml_path,
                                      const std::filesystem::path& gold_path) {
  const auto gold = read_gold(gold_path);
  std::ifstream in(xml_path);
  if (!in) throw DataError("cannot open corpus file: " + xml_path.string());
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(xml_path.string() + ":" + std::to_string(e.line()) +
                     ": " + e.message());
  }
  AnnotatedCorpus corpus;
  XmlReader(xml_path, gold, corpus).walk(tree);
  validate(corpus);
  return corpus;
}

void write_annotated_corpus(const AnnotatedCorpus& corpus,
                            const std::filesystem::path& xml_path,
                            const std::filesystem::path& gold_path) {
  std::ofstream xml(xml_path);
  std::ofstream gold(gold_path);
  if (!xml || !gold) {
    throw DataError("cannot write corpus to " + xml_path.string());
  }
  std::map<std::string, std::map<std::size_t, const AnnotatedInstance*>>
      by_sentence;
  for (const auto& inst : corpus.instances) {
    by_sentence[inst.sentence->source_id][inst.target_index] = &inst;
    gold << inst.instance_id << ' ' << inst.gold.value;
    for (const auto& k : inst.extra_gold) gold << ' ' << k.value;
    gold << '\n';
  }
  xml << "<?xml version=\"1.0\" encoding=\"UTF-8\" ?>\n"
      << "<corpus lang=\"en\" source=\"smsmix\">\n<text id=\"d000\">\n";
  for (const auto& [sid, sentence] : corpus.sentences) {
    xml << "<sentence id=\"" << xml_escape(sid) << "\">\n";
    const auto& marks = by_sentence[sid];
    for (std::size_t i = 0; i < sentence->tokens.size(); ++i) {
      const auto m = marks.find(i);
      if (m == marks.end()) {
        xml << "<wf>" << xml_escape(sentence->tokens[i]) << "</wf>\n";
      } else {
        const auto& inst = *m->second;
        xml << "<instance id=\"" << xml_escape(inst.instance_id)
            << "\" lemma=\"" << xml_escape(inst.lemma) << "\" pos=\""
            << to_string(inst.pos) << "\">" << xml_escape(sentence->tokens[i])
            << "</instance>\n";
      }
    }
    xml << "</sentence>\n";
  }
  xml << "</text>\n</corpus>\n";
}

std::size_t FrequencyTable::count(const LemmaPos& lp,
                                  const SenseKey& key) const {
  const auto it = counts.find(lp);
  if (it == counts.end()) return 0;
  const auto k = it->second.find(key);
  return k == it->second.end() ? 0 : k->second;
}

const SenseKey* FrequencyTable::mfs_of(const LemmaPos& lp) const {
  const auto it = mfs.find(lp);
  return it == mfs.end() ? nullptr : &it->second;
}

std::size_t FrequencyTable::distinct_senses() const {
  std::set<SenseKey> keys;
  for (const auto& [lp, senses] : counts) {
    for (const auto& [key, n] : senses) keys.insert(key);
  }
  return keys.size();
}

std::string FrequencyTable::serialize() const {
  std::ostringstream out;
  for (const auto& [lp, senses] : counts) {
    const SenseKey* top = mfs_of(lp);
    for (const auto& [key, n] : senses) {
      out << lp.lemma << '\t' << to_string(lp.pos) << '\t' << key.value
          << '\t' << n << '\t' << (top && *top == key ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

FrequencyTable sense_frequencies(const AnnotatedCorpus& corpus) {
  FrequencyTable table;
  for (const auto& inst : corpus.instances) {
    ++table.counts[inst.lemma_pos()][inst.gold];
  }
  for (const auto& [lp, senses] : table.counts) {
    // std::map iterates keys in order, so strict > keeps the smallest key on
    // ties.
    const SenseKey* best = nullptr;
    std::size_t best_n = 0;
    for (const auto& [key, n] : senses) {
      if (n > best_n) {
        best = &key;
        best_n = n;
      }
    }
    if (best) table.mfs.emplace(lp, *best);
  }
  return table;
}

std::vector<TargetSense> lfs_senses(const FrequencyTable& table) {
  std::vector<TargetSense> out;
  for (const auto& [lp, senses] : table.counts) {
    const SenseKey* top = table.mfs_of(lp);
    for (const auto& [key, n] : senses) {
      if (n > 0 && (top == nullptr || key != *top)) out.push_back({lp, key});
    }
  }
  return out;
}

SenseIndex::SenseIndex(const AnnotatedCorpus& corpus) {
  for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
    const auto& inst = corpus.instances[i];
    by_sense_[{inst.lemma_pos(), inst.gold}].push_back(i);
  }
}

const std::vector<std::size_t>& SenseIndex::instances_of(
    const TargetSense& sense) const {
  static const std::vector<std::size_t> kEmpty;
  const auto it = by_sense_.find(sense);
  return it == by_sense_.end() ? kEmpty : it->second;
}

namespace {

NoHostAvailable no_host(const std::string& lemma, Pos pos) {
  return NoHostAvailable("no MFS host instance for " + lemma + "/" +
                         std::string(to_string(pos)));
}

}  // namespace

const AnnotatedInstance& mfs_host_instance(const AnnotatedCorpus& corpus,
                                           const FrequencyTable& table,
                                           const std::string& lemma, Pos pos,
                                           Rng& rng) {
  const LemmaPos lp{to_lower(lemma), pos};
  const SenseKey* top = table.mfs_of(lp);
  if (top == nullptr) throw no_host(lemma, pos);
  std::vector<const AnnotatedInstance*> hosts;
  for (const auto& inst : corpus.instances) {
    if (inst.lemma_pos() == lp && inst.gold == *top) hosts.push_back(&inst);
  }
  if (hosts.empty()) throw no_host(lemma, pos);
  return *hosts[rng.uniform(hosts.size())];
}

const AnnotatedInstance& mfs_host_instance(const AnnotatedCorpus& corpus,
                                           const SenseIndex& index,
                                           const FrequencyTable& table,
                                           const std::string& lemma, Pos pos,
                                           Rng& rng) {
  const LemmaPos lp{to_lower(lemma), pos};
  const SenseKey* top = table.mfs_of(lp);
  if (top == nullptr) throw no_host(lemma, pos);
  const auto& hosts = index.instances_of({lp, *top});
  if (hosts.empty()) throw no_host(lemma, pos);
  return corpus.instances[hosts[rng.uniform(hosts.size())]];
}

ExternalCorpus load_external_corpus(const std::filesystem::path& path,
                                    const ExternalCorpusOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open external corpus: " + path.string());
  ExternalCorpus ext;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() < options.min_len || tokens.size() > options.max_len) {
      ++ext.dropped;
      continue;
    }
    ext.sentences.push_back(
        Sentence{std::move(tokens), "ext:" + std::to_string(line_no)});
  }
  return ext;
}

const Sentence& sample_external(const ExternalCorpus& ext, Rng& rng) {
  if (ext.sentences.empty()) throw EmptyCorpus("external corpus is empty");
  return ext.sentences[rng.uniform(ext.sentences.size())];
}

}  // namespace smsmix
