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

#include "smsmix/wsdeval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "smsmix/error.hpp"
#include "smsmix/text.hpp"

namespace smsmix {
namespace {

bool credited(const GoldEntry& g, const SenseKey& pred) {
  return std::find(g.keys.begin(), g.keys.end(), pred) != g.keys.end();
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

GoldMap restrict(const GoldMap& gold, const std::set<std::string>& ids) {
  GoldMap out;
  for (const auto& id : ids) {
    const auto it = gold.find(id);
    if (it != gold.end()) out.emplace(id, it->second);
  }
  return out;
}

std::size_t distinct_senses(const GoldMap& gold) {
  std::set<SenseKey> keys;
  for (const auto& [id, g] : gold) keys.insert(g.keys.front());
  return keys.size();
}

EvalRow row_for(const std::string& dataset, const std::string& subset,
                const PredictionSet& preds, const GoldMap& gold,
                MacroUnit unit) {
  return EvalRow{dataset,
                 subset,
                 gold.size(),
                 distinct_senses(gold),
                 micro_f1(preds, gold),
                 macro_f1(preds, gold, unit)};
}

}  // namespace

GoldMap gold_map(const AnnotatedCorpus& corpus) {
  GoldMap gold;
  for (const auto& inst : corpus.instances) {
    GoldEntry g;
    g.keys.push_back(inst.gold);
    g.keys.insert(g.keys.end(), inst.extra_gold.begin(), inst.extra_gold.end());
    g.lemma_pos = inst.lemma_pos();
    gold.emplace(inst.instance_id, std::move(g));
  }
  return gold;
}

double micro_f1(const PredictionSet& preds, const GoldMap& gold) {
  std::size_t attempted = 0;
  std::size_t correct = 0;
  for (const auto& [id, pred] : preds) {
    const auto g = gold.find(id);
    if (g == gold.end()) continue;
    ++attempted;
    if (credited(g->second, pred)) ++correct;
  }
  if (attempted == 0 || gold.empty() || correct == 0) return 0.0;
  const double p = static_cast<double>(correct) / static_cast<double>(attempted);
  const double r = static_cast<double>(correct) / static_cast<double>(gold.size());
  return 2.0 * p * r / (p + r);
}

double macro_f1(const PredictionSet& preds, const GoldMap& gold,
                MacroUnit unit) {
  struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<SenseKey, Counts> per_key;
  std::map<SenseKey, LemmaPos> owner;
  for (const auto& [id, g] : gold) {
    const auto p = preds.find(id);
    const SenseKey* pred = p == preds.end() ? nullptr : &p->second;
    const bool ok = pred && credited(g, *pred);
    const SenseKey& ref = ok ? *pred : g.keys.front();
    owner.emplace(ref, g.lemma_pos);
    if (ok) {
      ++per_key[ref].tp;
    } else {
      ++per_key[ref].fn;
      if (pred) ++per_key[*pred].fp;
    }
  }
  // Only keys that are some instance's reference take part in the average.
  std::map<SenseKey, double> f1;
  for (const auto& [key, lp] : owner) {
    const Counts& c = per_key[key];
    const std::size_t denom = 2 * c.tp + c.fp + c.fn;
    f1[key] = denom ? 2.0 * static_cast<double>(c.tp) /
                          static_cast<double>(denom)
                    : 0.0;
  }
  if (f1.empty()) return 0.0;
  if (unit == MacroUnit::kBySense) {
    double sum = 0.0;
    for (const auto& [key, v] : f1) sum += v;
    return sum / static_cast<double>(f1.size());
  }
  std::map<LemmaPos, std::pair<double, std::size_t>> groups;
  for (const auto& [key, v] : f1) {
    auto& g = groups[owner.at(key)];
    g.first += v;
    ++g.second;
  }
  double sum = 0.0;
  for (const auto& [lp, g] : groups) {
    sum += g.first / static_cast<double>(g.second);
  }
  return sum / static_cast<double>(groups.size());
}

SubsetPartition subset_partition(const AnnotatedCorpus& eval_corpus,
                                 const FrequencyTable& train_table,
                                 const SenseInventory* inventory) {
  std::set<SenseKey> seen_keys;
  for (const auto& [lp, senses] : train_table.counts) {
    for (const auto& [key, n] : senses) {
      if (n > 0) seen_keys.insert(key);
    }
  }
  SubsetPartition out;
  for (const auto& inst : eval_corpus.instances) {
    if (inventory && inventory->senses_of(inst.lemma, inst.pos).empty()) {
      ++out.not_in_inventory;
    }
    const LemmaPos lp = inst.lemma_pos();
    const bool lemma_seen = train_table.counts.count(lp) > 0;
    bool key_seen = seen_keys.count(inst.gold) > 0;
    for (const auto& k : inst.extra_gold) key_seen = key_seen || seen_keys.count(k);
    std::size_t slot;
    if (!lemma_seen && !key_seen) {
      slot = 3;  // 0-lex-def
    } else if (!lemma_seen) {
      slot = 2;  // 0-lex
    } else if (!key_seen) {
      slot = 4;  // 0-def
    } else {
      const SenseKey* top = train_table.mfs_of(lp);
      bool is_mfs = top && inst.gold == *top;
      for (const auto& k : inst.extra_gold) is_mfs = is_mfs || (top && k == *top);
      slot = is_mfs ? 0 : 1;
    }
    out.subsets[slot].insert(inst.instance_id);
  }
  return out;
}

EvalReport score_predictions(const PredictionSet& preds,
                             const AnnotatedCorpus& eval_corpus,
                             const FrequencyTable& train_table,
                             const SenseInventory* inventory,
                             const EvalOptions& options) {
  const GoldMap gold = gold_map(eval_corpus);
  EvalReport report;
  report.predictions = preds;
  for (const auto& [id, g] : gold) {
    if (!preds.count(id)) ++report.unattempted;
  }
  report.rows.push_back(row_for(options.dataset, "ALL", preds, gold, options.unit));
  const auto partition = subset_partition(eval_corpus, train_table, inventory);
  for (std::size_t i = 0; i < kSubsetNames.size(); ++i) {
    report.rows.push_back(row_for(options.dataset, std::string(kSubsetNames[i]),
                                  preds, restrict(gold, partition.subsets[i]),
                                  options.unit));
  }
  report.metadata["seed"] = std::to_string(options.seed);
  report.metadata["model"] = options.model_id;
  report.metadata["subsets"] = std::string(kSubsetVersion);
  report.metadata["macro_unit"] =
      options.unit == MacroUnit::kBySense ? "by_sense" : "by_lemma";
  report.metadata["unattempted"] = std::to_string(report.unattempted);
  return report;
}

EvalReport evaluate(const WsdModel& model, const AnnotatedCorpus& eval_corpus,
                    const SenseInventory& inventory,
                    const FrequencyTable& train_table,
                    const EvalOptions& options) {
  PredictionSet preds;
  for (const auto& inst : eval_corpus.instances) {
    const auto& cands = inventory.senses_of(inst.lemma, inst.pos);
    if (cands.empty()) continue;
    const auto scores = model.score(*inst.sentence, inst.target_index, cands);
    const bool usable =
        scores.size() == cands.size() &&
        std::all_of(scores.begin(), scores.end(),
                    [](double v) { return std::isfinite(v); });
    if (usable) {
      const auto best = std::max_element(scores.begin(), scores.end());
      preds.emplace(inst.instance_id,
                    cands[static_cast<std::size_t>(best - scores.begin())].key);
    } else if (const SenseKey* top = train_table.mfs_of(inst.lemma_pos())) {
      preds.emplace(inst.instance_id, *top);
    } else {
      preds.emplace(inst.instance_id, cands.front().key);
    }
  }
  return score_predictions(preds, eval_corpus, train_table, &inventory, options);
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report: " + path.string());
  for (const auto& [k, v] : report.metadata) out << "# " << k << "=" << v << '\n';
  out << "dataset\tsubset\tn_instances\tn_senses\tmicro_f1\tmacro_f1\n";
  for (const auto& r : report.rows) {
    out << r.dataset << '\t' << r.subset << '\t' << r.n_instances << '\t'
        << r.n_senses << '\t' << fixed(r.micro_f1) << '\t' << fixed(r.macro_f1)
        << '\n';
  }
}

void write_multi_seed_report(const std::vector<EvalReport>& runs,
                             const std::filesystem::path& path) {
  if (runs.empty()) throw ConfigError("no runs to aggregate");
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report: " + path.string());
  out << "# runs=" << runs.size() << '\n';
  for (const auto& [k, v] : runs.front().metadata) {
    if (k != "seed") out << "# " << k << "=" << v << '\n';
  }
  out << "dataset\tsubset\tn_instances\tn_senses\tmicro_f1_mean\tmicro_f1_std"
         "\tmacro_f1_mean\tmacro_f1_std\n";
  const auto stats = [&](std::size_t row, double EvalRow::*field) {
    double mean = 0.0;
    for (const auto& r : runs) mean += r.rows.at(row).*field;
    mean /= static_cast<double>(runs.size());
    double var = 0.0;
    for (const auto& r : runs) {
      const double d = r.rows.at(row).*field - mean;
      var += d * d;
    }
    const double sd = runs.size() > 1
                          ? std::sqrt(var / static_cast<double>(runs.size() - 1))
                          : 0.0;
    return std::pair{mean, sd};
  };
  for (std::size_t i = 0; i < runs.front().rows.size(); ++i) {
    const auto& r = runs.front().rows[i];
    const auto [mi, mi_sd] = stats(i, &EvalRow::micro_f1);
    const auto [ma, ma_sd] = stats(i, &EvalRow::macro_f1);
    out << r.dataset << '\t' << r.subset << '\t' << r.n_instances << '\t'
        << r.n_senses << '\t' << fixed(mi) << '\t' << fixed(mi_sd) << '\t'
        << fixed(ma) << '\t' << fixed(ma_sd) << '\n';
  }
}

void write_predictions(const PredictionSet& preds,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write predictions: " + path.string());
  for (const auto& [id, key] : preds) out << id << ' ' << key.value << '\n';
}

PredictionSet read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions: " + path.string());
  PredictionSet preds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_whitespace(line);
    if (f.empty()) continue;
    if (f.size() != 2) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected '<instance_id> <sense_key>'");
    }
    preds[f[0]] = SenseKey(f[1]);
  }
  return preds;
}

}  // namespace smsmix
