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

#include <fstream>
#include <json.hpp>

#include "smsmix/augmentor.hpp"
#include "smsmix/error.hpp"

namespace smsmix {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kSchema = "smsmix.augmented";
constexpr int kVersion = 1;

Json span_json(const Span& s) { return Json::array({s.start, s.end}); }

Span span_from(const Json& j) {
  return Span{j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

Json plan_json(const AugmentationPlan& plan) {
  Json targets = Json::array();
  for (const auto& t : plan.targets) {
    targets.push_back(Json::array(
        {t.lemma_pos.lemma, to_string(t.lemma_pos.pos), t.key.value}));
  }
  Json j;
  j["mode"] = to_string(plan.mode);
  j["per_sense"] = plan.per_sense;
  j["lfs_fraction"] = plan.lfs_fraction;
  j["selection_policy"] = to_string(plan.selection_policy);
  j["retry_limit"] = plan.retry_limit;
  j["max_fraction"] = plan.max_fraction;
  j["seed"] = plan.seed;
  j["targets"] = std::move(targets);
  return j;
}

Pos pos_from(const Json& j) {
  const auto p = parse_pos(j.get<std::string>());
  if (!p) throw ParseError("unknown POS " + j.dump());
  return *p;
}

InjectionMode mode_from(const Json& j) {
  const auto m = parse_injection_mode(j.get<std::string>());
  if (!m) throw ParseError("unknown injection mode " + j.dump());
  return *m;
}

AugmentationPlan plan_from(const Json& j) {
  AugmentationPlan plan;
  plan.mode = mode_from(j.at("mode"));
  plan.per_sense = j.at("per_sense").get<std::size_t>();
  plan.lfs_fraction = j.at("lfs_fraction").get<double>();
  const auto policy =
      parse_selection_policy(j.at("selection_policy").get<std::string>());
  if (!policy) throw ParseError("unknown selection policy");
  plan.selection_policy = *policy;
  plan.retry_limit = j.at("retry_limit").get<std::size_t>();
  plan.max_fraction = j.at("max_fraction").get<double>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& t : j.at("targets")) {
    plan.targets.push_back(
        {LemmaPos{t.at(0).get<std::string>(), pos_from(t.at(1))},
         SenseKey(t.at(2).get<std::string>())});
  }
  return plan;
}

Json example_json(const AugmentedExample& ex) {
  const auto& p = ex.provenance;
  Json prov;
  prov["source_instance_id"] = p.source_instance_id;
  prov["host_id"] = p.host_id;
  prov["donor_span"] = span_json(p.donor_span);
  prov["host_span"] = span_json(p.host_span);
  prov["injection_mode"] = to_string(p.mode);
  prov["infills"] = p.infills;
  prov["judge_verdict"] = p.judge_verdict;
  prov["seed"] = p.seed;
  prov["tie_break"] = p.tie_break;
  prov["host_saliency_label"] = p.host_saliency_label;

  Json j;
  j["tokens"] = ex.sentence.tokens;
  j["target_index"] = ex.target_index;
  j["lemma"] = ex.lemma;
  j["pos"] = to_string(ex.pos);
  j["sense_key"] = ex.label.value;
  j["provenance"] = std::move(prov);
  j["accepted"] = ex.accepted;
  return j;
}

AugmentedExample example_from(const Json& j) {
  AugmentedExample ex;
  ex.sentence.tokens = j.at("tokens").get<std::vector<std::string>>();
  ex.target_index = j.at("target_index").get<std::size_t>();
  ex.lemma = j.at("lemma").get<std::string>();
  ex.pos = pos_from(j.at("pos"));
  ex.label = SenseKey(j.at("sense_key").get<std::string>());
  ex.accepted = j.at("accepted").get<bool>();
  const auto& p = j.at("provenance");
  auto& prov = ex.provenance;
  prov.source_instance_id = p.at("source_instance_id").get<std::string>();
  prov.host_id = p.at("host_id").get<std::string>();
  prov.donor_span = span_from(p.at("donor_span"));
  prov.host_span = span_from(p.at("host_span"));
  prov.mode = mode_from(p.at("injection_mode"));
  prov.infills = p.at("infills").get<Infills>();
  prov.judge_verdict = p.at("judge_verdict").get<bool>();
  prov.seed = p.at("seed").get<std::uint64_t>();
  prov.tie_break = p.at("tie_break").get<std::string>();
  prov.host_saliency_label = p.at("host_saliency_label").get<std::string>();
  ex.sentence.source_id =
      "smsmix:" + prov.source_instance_id + ":" + std::to_string(prov.seed);
  if (ex.target_index >= ex.sentence.tokens.size()) {
    throw ParseError("target_index outside tokens");
  }
  return ex;
}

}  // namespace

void write_dataset(const AugmentedDataset& dataset,
                   const std::filesystem::path& path, bool include_rejected) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write dataset: " + path.string());
  Json header;
  header["schema"] = kSchema;
  header["version"] = kVersion;
  header["plan"] = plan_json(dataset.plan);
  header["stats"] = {{"attempted", dataset.stats.attempted},
                     {"accepted", dataset.stats.accepted},
                     {"rejected", dataset.stats.rejected},
                     {"skipped_senses", dataset.stats.skipped_senses}};
  out << header.dump() << '\n';
  for (const auto& ex : dataset.examples) out << example_json(ex).dump() << '\n';
  if (include_rejected) {
    for (const auto& ex : dataset.rejected) {
      out << example_json(ex).dump() << '\n';
    }
  }
}

AugmentedDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path.string());
  AugmentedDataset ds;
  std::string line;
  std::size_t line_no = 0;
  try {
    if (!std::getline(in, line)) {
      throw ParseError("missing schema header");
    }
    ++line_no;
    const Json header = Json::parse(line);
    if (header.value("schema", "") != kSchema) {
      throw ParseError("not an augmented dataset file");
    }
    if (header.value("version", 0) != kVersion) {
      throw ParseError("unsupported schema version " +
                       header.at("version").dump());
    }
    ds.plan = plan_from(header.at("plan"));
    const auto& st = header.at("stats");
    ds.stats.attempted = st.at("attempted").get<std::size_t>();
    ds.stats.accepted = st.at("accepted").get<std::size_t>();
    ds.stats.rejected = st.at("rejected").get<std::size_t>();
    ds.stats.skipped_senses = st.at("skipped_senses").get<std::size_t>();
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      AugmentedExample ex = example_from(Json::parse(line));
      (ex.accepted ? ds.examples : ds.rejected).push_back(std::move(ex));
    }
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                     e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                     e.what());
  }
  return ds;
}

}  // namespace smsmix
