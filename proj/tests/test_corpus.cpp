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

#include <fstream>
#include <set>

#include "smsmix/corpus.hpp"
#include "smsmix/error.hpp"
#include "synthetic.hpp"

using namespace smsmix;

namespace {

const char* kXml = R"(<?xml version="1.0" encoding="UTF-8" ?>
<corpus lang="en" source="fixture">
<text id="d000">
<sentence id="d000.s000">
<wf lemma="the" pos="DET">The</wf>
<instance id="d000.s000.t000" lemma="plant" pos="NOUN">plant</instance>
<wf lemma="grow" pos="VERB">grew</wf>
<wf lemma="in" pos="ADP">in</wf>
<wf lemma="new_york" pos="NOUN">New York</wf>
</sentence>
</text>
</corpus>
)";

struct Files {
  std::filesystem::path xml;
  std::filesystem::path gold;
};

Files write_fixture(const std::string& name, const std::string& xml,
                    const std::string& gold) {
  const auto dir = testing::temp_dir("corpus-" + name);
  Files f{dir / "c.data.xml", dir / "c.gold.key.txt"};
  std::ofstream(f.xml) << xml;
  std::ofstream(f.gold) << gold;
  return f;
}

AnnotatedCorpus corpus_from_counts(
    const std::vector<std::pair<std::string, std::size_t>>& counts,
    const std::string& lemma = "bank") {
  AnnotatedCorpus c;
  std::size_t n = 0;
  for (const auto& [key, count] : counts) {
    for (std::size_t i = 0; i < count; ++i, ++n) {
      auto s = std::make_shared<Sentence>();
      s->source_id = lemma + ".s" + std::to_string(n);
      s->tokens = {"a", lemma, "b"};
      c.sentences.emplace(s->source_id, s);
      c.instances.push_back(
          {s->source_id + ".t0", s, 1, lemma, Pos::kNoun, SenseKey(key), {}});
    }
  }
  return c;
}

}  // namespace

TEST_CASE("one sentence, one instance") {
  const auto f = write_fixture("one", kXml, "d000.s000.t000 plant%1:03:00::\n");
  const auto c = load_annotated_corpus(f.xml, f.gold);
  REQUIRE(c.size() == 1);
  const auto& inst = c.instances[0];
  CHECK(inst.target_index == 1);
  CHECK(inst.target_token() == "plant");
  CHECK(inst.lemma == "plant");
  CHECK(inst.pos == Pos::kNoun);
  CHECK(inst.gold.value == "plant%1:03:00::");
  CHECK(inst.sentence->tokens.size() == 5);
  CHECK(inst.sentence->tokens[4] == "New_York");
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("gold line with two keys keeps the rest as extras") {
  const auto f = write_fixture("two", kXml,
                               "d000.s000.t000 plant%1:03:00:: plant%1:20:00::\n");
  const auto c = load_annotated_corpus(f.xml, f.gold);
  CHECK(c.instances[0].gold.value == "plant%1:03:00::");
  REQUIRE(c.instances[0].extra_gold.size() == 1);
  CHECK(c.instances[0].extra_gold[0].value == "plant%1:20:00::");
}

TEST_CASE("missing gold and bad XML are reported") {
  const auto f = write_fixture("nogold", kXml, "");
  CHECK_THROWS_AS(load_annotated_corpus(f.xml, f.gold), MissingGold);
  const auto g = write_fixture("badxml", "<corpus><sentence>", "");
  CHECK_THROWS_AS(load_annotated_corpus(g.xml, g.gold), ParseError);
  CHECK_THROWS_AS(load_annotated_corpus("/nonexistent.xml", g.gold), DataError);
}

TEST_CASE("write then load reproduces the corpus") {
  const auto data = testing::make_synthetic({.train_instances = 300, .seed = 5});
  const auto dir = testing::temp_dir("corpus-roundtrip");
  write_annotated_corpus(data.train, dir / "t.xml", dir / "t.gold");
  const auto back = load_annotated_corpus(dir / "t.xml", dir / "t.gold");
  REQUIRE(back.size() == data.train.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& a = data.train.instances[i];
    const auto& b = back.instances[i];
    CHECK(a.instance_id == b.instance_id);
    CHECK(a.sentence->tokens == b.sentence->tokens);
    CHECK(a.target_index == b.target_index);
    CHECK(a.gold == b.gold);
  }
}

TEST_CASE("sense frequencies") {
  SUBCASE("9 to 1 picks the majority") {
    const auto t = sense_frequencies(corpus_from_counts({{"a", 9}, {"b", 1}}));
    const LemmaPos lp{"bank", Pos::kNoun};
    CHECK(t.mfs_of(lp)->value == "a");
    CHECK(t.count(lp, SenseKey("a")) == 9);
    CHECK(t.count(lp, SenseKey("b")) == 1);
    const auto lfs = lfs_senses(t);
    REQUIRE(lfs.size() == 1);
    CHECK(lfs[0].key.value == "b");
  }
  SUBCASE("ties go to the smallest key") {
    const auto t = sense_frequencies(corpus_from_counts({{"b", 5}, {"a", 5}}));
    CHECK(t.mfs_of({"bank", Pos::kNoun})->value == "a");
  }
  SUBCASE("single-sense lemma contributes no LFS") {
    const auto t = sense_frequencies(corpus_from_counts({{"a", 4}}));
    CHECK(lfs_senses(t).empty());
  }
  SUBCASE("synthetic counts match construction") {
    const auto data = testing::make_synthetic({.seed = 2});
    const auto t = sense_frequencies(data.train);
    for (const auto& [key, count] : data.train_counts) {
      const std::string lemma = key.value.substr(0, key.value.find('%'));
      CHECK(t.count({lemma, Pos::kNoun}, key) == count);
    }
    CHECK(t.distinct_senses() == data.train_counts.size());
  }
}

TEST_CASE("lfs_senses equals a brute-force filter on random tables") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    FrequencyTable t;
    const std::size_t lemmas = 1 + rng.uniform(5);
    for (std::size_t l = 0; l < lemmas; ++l) {
      const LemmaPos lp{"l" + std::to_string(l), Pos::kVerb};
      const std::size_t senses = 1 + rng.uniform(4);
      for (std::size_t s = 0; s < senses; ++s) {
        t.counts[lp][SenseKey("k" + std::to_string(s))] = 1 + rng.uniform(6);
      }
      // MFS rule, recomputed here.
      const SenseKey* best = nullptr;
      std::size_t best_n = 0;
      for (const auto& [k, n] : t.counts[lp]) {
        if (n > best_n) best = &k, best_n = n;
      }
      t.mfs[lp] = *best;
    }
    std::set<TargetSense> expected;
    for (const auto& [lp, counts] : t.counts) {
      for (const auto& [k, n] : counts) {
        if (!(k == t.mfs[lp])) expected.insert({lp, k});
      }
    }
    const auto got = lfs_senses(t);
    CHECK(std::set<TargetSense>(got.begin(), got.end()) == expected);
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("mfs_host_instance") {
  const auto corpus = corpus_from_counts({{"a", 10}, {"b", 2}});
  const auto table = sense_frequencies(corpus);
  const SenseIndex index(corpus);
  SUBCASE("always an MFS instance, and reproducible") {
    Rng r1(4), r2(4);
    std::set<std::string> seen;
    for (int i = 0; i < 50; ++i) {
      const auto& h1 = mfs_host_instance(corpus, table, "bank", Pos::kNoun, r1);
      const auto& h2 =
          mfs_host_instance(corpus, index, table, "bank", Pos::kNoun, r2);
      CHECK(h1.gold.value == "a");
      CHECK(h1.instance_id == h2.instance_id);
      seen.insert(h1.instance_id);
    }
    CHECK(seen.size() > 1);
  }
  SUBCASE("exactly one MFS instance") {
    const auto one = corpus_from_counts({{"a", 1}});
    Rng r(0);
    CHECK(&mfs_host_instance(one, sense_frequencies(one), "bank", Pos::kNoun,
                             r) == &one.instances[0]);
  }
  SUBCASE("no host") {
    Rng r(0);
    CHECK_THROWS_AS(mfs_host_instance(corpus, table, "river", Pos::kNoun, r),
                    NoHostAvailable);
    // Table says the MFS is 'a', but the corpus subset only has 'b'.
    auto subset = corpus_from_counts({{"b", 2}});
    CHECK_THROWS_AS(mfs_host_instance(subset, table, "bank", Pos::kNoun, r),
                    NoHostAvailable);
  }
}

TEST_CASE("external corpus") {
  const auto dir = testing::temp_dir("corpus-external");
  std::ofstream(dir / "ext.txt") << "one two three four five six\n"
                                 << "too short\n"
                                 << "\n"
                                 << "a b c d e\n";
  const auto ext = load_external_corpus(dir / "ext.txt");
  REQUIRE(ext.sentences.size() == 2);
  CHECK(ext.dropped == 1);
  Rng r1(9), r2(9);
  for (int i = 0; i < 100; ++i) {
    const auto& s = sample_external(ext, r1);
    CHECK(s.tokens.size() >= 5);
    CHECK(&s == &sample_external(ext, r2));
  }
  ExternalCorpus single;
  single.sentences.push_back({{"x", "y", "z", "w", "v"}, "ext:1"});
  Rng r(0);
  CHECK(sample_external(single, r).source_id == "ext:1");
  CHECK_THROWS_AS(sample_external(ExternalCorpus{}, r), EmptyCorpus);
}

TEST_CASE("validate catches broken corpora") {
  auto c = corpus_from_counts({{"a", 2}});
  c.instances[1].instance_id = c.instances[0].instance_id;
  CHECK_THROWS_AS(validate(c), DataError);
  auto d = corpus_from_counts({{"a", 1}});
  d.instances[0].target_index = 7;
  CHECK_THROWS_AS(validate(d), DataError);
}
