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

#include <doctest.h>

#include <algorithm>
#include <map>

#include "smsmix/error.hpp"
#include "smsmix/mixer.hpp"
#include "smsmix/reference_backends.hpp"
#include "smsmix/toy_biencoder.hpp"
#include "synthetic.hpp"

using namespace smsmix;

namespace {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto j = std::min(text.find(' ', i), text.size());
    out.emplace_back(text.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

// Saliency peaking two tokens either side of the target.
class PeakSaliency final : public SaliencyBackend {
 public:
  SaliencyVector token_saliency(const AnnotatedInstance& inst,
                                std::span<const SenseEntry>) const override {
    SaliencyVector s(inst.sentence->tokens.size(), 0.1);
    const std::size_t t = inst.target_index;
    if (t >= 2) s[t - 2] = 1.0;
    if (t + 2 < s.size()) s[t + 2] = 1.0;
    return s;
  }
};

class ShortSaliency final : public SaliencyBackend {
 public:
  SaliencyVector token_saliency(const AnnotatedInstance&,
                                std::span<const SenseEntry>) const override {
    return {1.0};
  }
};

class FixedInfiller final : public InfillEngine {
 public:
  explicit FixedInfiller(Infills fills) : fills_(std::move(fills)) {}
  Infills infill(const MaskedText&) const override { return fills_; }

 private:
  Infills fills_;
};

class RejectAll final : public AcceptabilityJudge {
 public:
  bool accept(const Sentence&) const override { return false; }
};

struct World {
  testing::SyntheticData data;
  FrequencyTable table;
  std::unique_ptr<SenseIndex> index;
  ToyBiEncoder model;
};

World make_world(std::uint64_t seed) {
  auto data = testing::make_synthetic(
      {.lemmas = 3, .train_instances = 300, .external_sentences = 50,
       .seed = seed});
  auto table = sense_frequencies(data.train);
  auto index = std::make_unique<SenseIndex>(data.train);
  ToyHyper h;
  h.seed = seed;
  h.epochs = 2;
  auto model = toy_train(data.train, data.inventory, h).model;
  return {std::move(data), std::move(table), std::move(index), std::move(model)};
}

MixDeps deps_for(const World& w, const InfillEngine& infill,
                 const AcceptabilityJudge& judge,
                 const SaliencyBackend* saliency = nullptr) {
  MixDeps d;
  d.saliency = saliency ? saliency : &w.model;
  d.infill = &infill;
  d.judge = &judge;
  d.inventory = &w.data.inventory;
  d.corpus = &w.data.train;
  d.index = w.index.get();
  d.table = &w.table;
  d.external = &w.data.external;
  return d;
}

const Sentence& host_of(const World& w, const AugmentedExample& ex) {
  if (ex.provenance.mode == InjectionMode::kExternal) {
    for (const auto& s : w.data.external.sentences) {
      if (s.source_id == ex.provenance.host_id) return s;
    }
  } else {
    for (const auto& inst : w.data.train.instances) {
      if (inst.instance_id == ex.provenance.host_id) return *inst.sentence;
    }
  }
  FAIL("host not found");
  throw;
}

const AnnotatedInstance& source_of(const World& w, const AugmentedExample& ex) {
  for (const auto& inst : w.data.train.instances) {
    if (inst.instance_id == ex.provenance.source_instance_id) return inst;
  }
  FAIL("source not found");
  throw;
}

}  // namespace

TEST_CASE("place_masks") {
  const auto masked = place_masks(words("outputs of systems"));
  CHECK(masked == std::vector<std::string>{sentinel(0), "outputs", "of",
                                           "systems", sentinel(1)});
  CHECK(place_masks(words("x")) ==
        std::vector<std::string>{sentinel(0), "x", sentinel(1)});
  std::vector<std::string> stripped;
  for (const auto& t : masked) {
    if (!is_sentinel(t)) stripped.push_back(t);
  }
  CHECK(stripped == words("outputs of systems"));
}

TEST_CASE("inject") {
  const Sentence host{words("h0 h1 h2 h3 h4 h5"), "host"};
  const auto block = place_masks(words("d0 d1 d2"));
  SUBCASE("length arithmetic") {
    const auto m = inject(host, {2, 3}, block, 2);
    CHECK(m.tokens.size() == 9);
    CHECK(m.tokens == words("h0 h1 <extra_id_0> d0 d1 d2 <extra_id_1> h4 h5"));
    CHECK(m.sentinel_positions == std::vector<std::size_t>{2, 6});
    CHECK(m.donor_span == Span{3, 5});
    CHECK(m.tokens[m.target_offset] == "d1");
  }
  SUBCASE("whole host replaced") {
    const auto m = inject(host, {0, 5}, block, 1);
    CHECK(m.tokens == block);
  }
  SUBCASE("span at the front") {
    const auto m = inject(host, {0, 0}, block, 1);
    CHECK(m.tokens.front() == sentinel(0));
    CHECK(m.donor_span == Span{1, 3});
    CHECK(m.tokens.size() == 10);
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(inject(host, {4, 6}, block, 1), SpanOutOfRange);
    CHECK_THROWS_AS(inject(host, {3, 2}, block, 1), SpanOutOfRange);
  }
}

TEST_CASE("smooth") {
  const Sentence host{words("h0 h1 h2 h3 h4 h5"), "host"};
  const auto m = inject(host, {2, 3}, place_masks(words("d0 d1 d2")), 2);
  SUBCASE("identity leaves the plain splice") {
    const auto r = smooth(TemplateInfiller(TemplateInfiller::Mode::kIdentity), m);
    CHECK(r.sentence.tokens == words("h0 h1 d0 d1 d2 h4 h5"));
    CHECK(r.sentence.tokens[r.target_index] == "d1");
  }
  SUBCASE("two-token infills shift the target by two") {
    const auto r = smooth(FixedInfiller({{"x", "y"}, {"z", "w"}}), m);
    CHECK(r.sentence.tokens == words("h0 h1 x y d0 d1 d2 z w h4 h5"));
    CHECK(r.target_index == m.target_offset + 2 - 1);
    CHECK(r.sentence.tokens[r.target_index] == "d1");
  }
  SUBCASE("contract violations") {
    CHECK_THROWS_AS(smooth(FixedInfiller({{"x"}}), m), BackendContractViolation);
    CHECK_THROWS_AS(smooth(FixedInfiller({{"x"}, {sentinel(3)}}), m),
                    BackendContractViolation);
  }
  SUBCASE("connectives on both sides of a verbatim donor") {
    const Sentence book{words("The book tells the story of a rare material found "
                              "in the hills"), "book"};
    const auto donor = words("outputs of the two systems are measured");
    const auto mm = inject(book, {6, 8}, place_masks(donor), 1);
    const auto r = smooth(TemplateInfiller(), mm);
    const auto& t = r.sentence.tokens;
    const auto it = std::search(t.begin(), t.end(), donor.begin(), donor.end());
    REQUIRE(it != t.end());
    CHECK(it - t.begin() > 6);  // a connective precedes the donor
    CHECK(std::distance(it, t.end()) > static_cast<long>(donor.size()) + 3);
    CHECK(std::none_of(t.begin(), t.end(), [](const auto& s) { return is_sentinel(s); }));
    CHECK(r.infills[0].size() >= 1);
    CHECK(r.infills[1].size() >= 1);
  }
}

TEST_CASE("mix with identity infiller and accept-all judge") {
  const World w = make_world(1);
  const TemplateInfiller identity(TemplateInfiller::Mode::kIdentity);
  const AcceptAllJudge judge;
  const auto deps = deps_for(w, identity, judge);
  const auto& source = w.data.train.instances[3];
  const auto ex = mix(source, InjectionMode::kExternal, deps, 42);
  CHECK(ex.accepted);
  const Sentence& host = host_of(w, ex);
  std::vector<std::string> expected(host.tokens.begin(),
                                    host.tokens.begin() + ex.provenance.host_span.start);
  expected.insert(expected.end(),
                  source.sentence->tokens.begin() + ex.provenance.donor_span.start,
                  source.sentence->tokens.begin() + ex.provenance.donor_span.end + 1);
  expected.insert(expected.end(),
                  host.tokens.begin() + ex.provenance.host_span.end + 1,
                  host.tokens.end());
  CHECK(ex.sentence.tokens == expected);
}

TEST_CASE("mix replay and rejection") {
  const World w = make_world(2);
  const TemplateInfiller infill;
  const RejectAll reject;
  const AcceptAllJudge accept;
  const auto& source = w.data.train.instances[0];
  const auto a = mix(source, InjectionMode::kExternal, deps_for(w, infill, accept), 9);
  const auto b = mix(source, InjectionMode::kExternal, deps_for(w, infill, accept), 9);
  CHECK(a == b);
  const auto r = mix(source, InjectionMode::kExternal, deps_for(w, infill, reject), 9);
  CHECK_FALSE(r.accepted);
  CHECK_FALSE(r.provenance.judge_verdict);
  CHECK(r.sentence == a.sentence);
  CHECK(r.provenance.infills.size() == 2);
  CHECK_THROWS_AS(
      mix(source, InjectionMode::kOversample, deps_for(w, infill, accept), 9),
      ConfigError);
}

TEST_CASE("internal mode takes its host from the MFS instances") {
  const World w = make_world(3);
  const TemplateInfiller infill;
  const AcceptAllJudge judge;
  const PeakSaliency peak;
  const auto deps = deps_for(w, infill, judge, &peak);
  std::map<std::string, const AnnotatedInstance*> by_id;
  for (const auto& inst : w.data.train.instances) by_id[inst.instance_id] = &inst;
  for (const auto& source : w.data.train.instances) {
    if (source.gold == *w.table.mfs_of(source.lemma_pos())) continue;
    const auto ex = mix(source, InjectionMode::kInternal, deps, 5);
    const auto* host = by_id.at(ex.provenance.host_id);
    CHECK(host->gold == *w.table.mfs_of(source.lemma_pos()));
    CHECK(ex.provenance.host_saliency_label == host->gold.value);
    // Host span is the sense-maintained span of the host's own target.
    const std::size_t t = host->target_index;
    CHECK(ex.provenance.host_span.start == (t >= 2 ? t - 2 : t));
    CHECK(ex.label == source.gold);
  }
}

TEST_CASE("backend failures carry the stage name") {
  const World w = make_world(4);
  const TemplateInfiller infill;
  const AcceptAllJudge judge;
  const ShortSaliency short_saliency;
  const auto& source = w.data.train.instances[0];
  try {
    mix(source, InjectionMode::kExternal, deps_for(w, infill, judge, &short_saliency), 1);
    FAIL("expected a contract violation");
  } catch (const BackendContractViolation& e) {
    CHECK(std::string(e.what()).find("stage saliency") != std::string::npos);
  }
  const FixedInfiller wrong({{"x"}});
  try {
    mix(source, InjectionMode::kExternal, deps_for(w, wrong, judge), 1);
    FAIL("expected a contract violation");
  } catch (const BackendContractViolation& e) {
    CHECK(std::string(e.what()).find("stage smooth") != std::string::npos);
  }
  auto bad = source;
  bad.gold = SenseKey("unknown");
  CHECK_THROWS_AS(mix(bad, InjectionMode::kExternal, deps_for(w, infill, judge), 1),
                  LabelNotCandidate);
  MixDeps missing = deps_for(w, infill, judge);
  missing.external = nullptr;
  CHECK_THROWS_AS(mix(source, InjectionMode::kExternal, missing, 1), ConfigError);
}

TEST_CASE("label preservation over many examples") {
  const World w = make_world(5);
  const TemplateInfiller tmpl;
  const TemplateInfiller identity(TemplateInfiller::Mode::kIdentity);
  const AcceptAllJudge judge;
  std::size_t checked = 0;
  for (const InfillEngine* engine : {static_cast<const InfillEngine*>(&tmpl),
                                     static_cast<const InfillEngine*>(&identity)}) {
    const auto deps = deps_for(w, *engine, judge);
    for (const auto mode : {InjectionMode::kExternal, InjectionMode::kInternal}) {
      for (std::size_t i = 0; i < 60; ++i) {
        const auto& source = w.data.train.instances[i];
        const auto ex = mix(source, mode, deps, 1000 + i);
        const auto& src = source_of(w, ex);
        CHECK(ex.label == src.gold);
        CHECK(ex.sentence.tokens[ex.target_index] == src.target_token());
        const auto& d = ex.provenance.donor_span;
        const std::vector<std::string> donor(src.sentence->tokens.begin() + d.start,
                                             src.sentence->tokens.begin() + d.end + 1);
        const auto& t = ex.sentence.tokens;
        CHECK(std::search(t.begin(), t.end(), donor.begin(), donor.end()) != t.end());
        CHECK(std::none_of(t.begin(), t.end(), [](const auto& s) { return is_sentinel(s); }));
        ++checked;
      }
    }
  }
  CHECK(checked == 240);
}
