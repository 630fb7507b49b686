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

#include <cmath>
#include <fstream>

#include "smsmix/diagnostics.hpp"
#include "smsmix/error.hpp"
#include "smsmix/toy_biencoder.hpp"
#include "synthetic.hpp"

using namespace smsmix;

namespace {

Eigen::MatrixXd gaussian(std::size_t n, std::size_t d, double offset, Rng& rng) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = offset + rng.normal();
  }
  return m;
}

EmbeddingSet two_origin(const Eigen::MatrixXd& aug, const Eigen::MatrixXd& ref,
                        const std::string& sense = "s") {
  EmbeddingSet set;
  set.vectors.resize(aug.rows() + ref.rows(), aug.cols());
  set.vectors << aug, ref;
  for (Eigen::Index i = 0; i < aug.rows(); ++i) {
    set.labels.push_back({SenseKey(sense), Origin::kAugmented});
  }
  for (Eigen::Index i = 0; i < ref.rows(); ++i) {
    set.labels.push_back({SenseKey(sense), Origin::kReference});
  }
  return set;
}

class FlakyEncoder final : public TargetEncoder {
 public:
  std::vector<double> encode(const Sentence& s, std::size_t t) const override {
    if (s.tokens[t] == "throw") throw BackendError("nope");
    if (s.tokens[t] == "short") return {1.0};
    if (s.tokens[t] == "nan") return {NAN, 0.0};
    return {static_cast<double>(s.tokens.size()), static_cast<double>(t)};
  }
  std::size_t dimension() const override { return 2; }
};

}  // namespace

TEST_CASE("embed_targets") {
  const auto data = testing::make_synthetic({.lemmas = 1, .train_instances = 200,
                                             .seed = 4});
  const auto model = toy_train(data.train, data.inventory, ToyHyper{.epochs = 1}).model;
  std::vector<TargetExample> examples;
  std::map<SenseKey, std::size_t> per_sense;
  for (const auto& inst : data.train.instances) {
    if (per_sense[inst.gold] >= 50) continue;
    ++per_sense[inst.gold];
    examples.push_back({*inst.sentence, inst.target_index, inst.gold, Origin::kReference});
    examples.push_back({*inst.sentence, inst.target_index, inst.gold, Origin::kAugmented});
  }
  const auto set = embed_targets(model, examples);
  REQUIRE(set.vectors.rows() == static_cast<Eigen::Index>(examples.size()));
  CHECK(set.vectors.cols() == 16);
  std::map<SenseKey, std::size_t> rows;
  for (const auto& l : set.labels) ++rows[l.sense];
  for (const auto& [k, n] : per_sense) {
    if (n == 50) CHECK(rows[k] == 100);
  }
  // Same sentence twice gives the same row.
  CHECK(set.vectors.row(0) == set.vectors.row(1));
  CHECK(embed_targets(model, {}).vectors.rows() == 0);
}

TEST_CASE("embed_targets skips encoder failures") {
  const FlakyEncoder enc;
  std::vector<TargetExample> ex;
  for (const char* w : {"ok", "throw", "short", "nan", "fine"}) {
    ex.push_back({{{"a", w, "b"}, ""}, 1, SenseKey("s"), Origin::kReference});
  }
  const auto set = embed_targets(enc, ex);
  CHECK(set.vectors.rows() == 2);
  CHECK(set.skipped == 3);
  CHECK(set.labels.size() == 2);
}

TEST_CASE("t-SNE keeps separated clusters apart") {
  Rng rng(1);
  Eigen::MatrixXd points(60, 16);
  points << gaussian(30, 16, 0.0, rng), gaussian(30, 16, 10.0, rng);
  TsneOptions opts;
  opts.seed = 5;
  const Eigen::MatrixXd y = project_2d(points, opts);
  REQUIRE(y.rows() == 60);
  REQUIRE(y.cols() == 2);
  const Eigen::RowVector2d c0 = y.topRows(30).colwise().mean();
  const Eigen::RowVector2d c1 = y.bottomRows(30).colwise().mean();
  // Nearest-centroid rule is a linear separator (perpendicular bisector).
  for (Eigen::Index i = 0; i < 60; ++i) {
    const double d0 = (y.row(i) - c0).squaredNorm();
    const double d1 = (y.row(i) - c1).squaredNorm();
    CHECK((i < 30 ? d0 < d1 : d1 < d0));
  }
  CHECK(project_2d(points, opts) == y);
  CHECK_THROWS_AS(project_2d(points.topRows(3), opts), DataError);
}

TEST_CASE("overlap score") {
  Rng rng(7);
  OverlapOptions opts;
  opts.seed = 3;
  SUBCASE("duplicated rows are indistinguishable") {
    const Eigen::MatrixXd ref = gaussian(40, 16, 0.0, rng);
    const auto scores = overlap_score(two_origin(ref, ref), opts);
    REQUIRE(scores.size() == 1);
    REQUIRE(scores[0].score.has_value());
    CHECK(std::abs(*scores[0].score - 0.5) <= 0.05);
  }
  SUBCASE("far-apart clusters are separable") {
    const auto scores = overlap_score(
        two_origin(gaussian(40, 16, 5.0, rng), gaussian(40, 16, -5.0, rng)), opts);
    CHECK(*scores[0].score > 0.95);
  }
  SUBCASE("shuffled labels give chance") {
    double total = 0.0;
    constexpr int kRuns = 6;
    for (int run = 0; run < kRuns; ++run) {
      EmbeddingSet set = two_origin(gaussian(40, 16, 0.0, rng), gaussian(40, 16, 0.0, rng));
      rng.shuffle(set.labels.begin(), set.labels.end());
      total += *overlap_score(set, opts)[0].score;
    }
    CHECK(std::abs(total / kRuns - 0.5) < 0.08);
  }
  SUBCASE("one-origin senses are reported without a score") {
    EmbeddingSet set = two_origin(gaussian(10, 4, 0.0, rng), gaussian(0, 4, 0.0, rng));
    const auto scores = overlap_score(set, opts);
    REQUIRE(scores.size() == 1);
    CHECK_FALSE(scores[0].score.has_value());
    CHECK_FALSE(scores[0].note.empty());
  }
}

TEST_CASE("plot data export") {
  Rng rng(2);
  Eigen::MatrixXd coords = gaussian(100, 2, 0.0, rng);
  std::vector<EmbeddingLabel> labels;
  for (int i = 0; i < 100; ++i) {
    labels.push_back({SenseKey("k" + std::to_string(i % 3)),
                      i % 2 ? Origin::kAugmented : Origin::kReference});
  }
  const auto path = testing::temp_dir("diagnostics-plot") / "plot.tsv";
  export_plot_data(coords, labels, path);
  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0, headers = 0;
  while (std::getline(in, line)) {
    ++lines;
    headers += line == "x\ty\tsense_key\torigin";
  }
  CHECK(lines == 101);
  CHECK(headers == 1);
  const auto rows = read_plot_data(path);
  REQUIRE(rows.size() == 100);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].x == coords(static_cast<Eigen::Index>(i), 0));
    CHECK(rows[i].y == coords(static_cast<Eigen::Index>(i), 1));
    CHECK(rows[i].sense_key == labels[i].sense.value);
    CHECK(rows[i].origin == labels[i].origin);
  }
}
