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

#ifndef SMSMIX_DIAGNOSTICS_HPP_
#define SMSMIX_DIAGNOSTICS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smsmix/backends.hpp"

namespace smsmix {

enum class Origin { kAugmented, kReference };

std::string_view to_string(Origin origin);
std::optional<Origin> parse_origin(std::string_view text);

struct TargetExample {
  Sentence sentence;
  std::size_t target_index = 0;
  SenseKey sense;
  Origin origin = Origin::kReference;
};

struct EmbeddingLabel {
  SenseKey sense;
  Origin origin = Origin::kReference;

  bool operator==(const EmbeddingLabel&) const = default;
};

struct EmbeddingSet {
  Eigen::MatrixXd vectors;  // one row per label
  std::vector<EmbeddingLabel> labels;
  std::size_t skipped = 0;  // examples the encoder failed on
};

// One row per example. Examples whose encoding throws, has the wrong width or
// contains non-finite values are skipped and counted.
EmbeddingSet embed_targets(const TargetEncoder& encoder,
                           std::span<const TargetExample> examples);

struct TsneOptions {
  double perplexity = 30.0;  // clamped to (n - 1) / 3
  std::size_t iterations = 1000;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  std::size_t exaggeration_iterations = 250;
  std::uint64_t seed = 0;
};

// Exact t-SNE to two dimensions. Throws DataError when there are fewer than
// four points; plot those directly instead.
Eigen::MatrixXd project_2d(const Eigen::MatrixXd& points,
                           const TsneOptions& options = {});

struct OverlapOptions {
  std::size_t folds = 5;
  std::size_t repeats = 4;
  std::uint64_t seed = 0;
  double l2 = 1e-2;
  std::size_t iterations = 300;
  double learning_rate = 0.5;
};

struct SenseOverlap {
  SenseKey sense;
  std::size_t n_augmented = 0;
  std::size_t n_reference = 0;
  std::optional<double> score;  // empty when skipped
  std::string note;
};

// Cross-validated balanced accuracy of a logistic probe separating class 1
// from class 0. Identical rows always land in the same fold. 0.5 means the
// classes are indistinguishable; 1.0 means fully separable.
double probe_balanced_accuracy(const Eigen::MatrixXd& x,
                               const std::vector<int>& y,
                               const OverlapOptions& options = {});

// Per sense: how well a linear probe tells augmented rows from reference
// rows. Senses with only one origin (or too few rows) are reported with a
// note and no score.
std::vector<SenseOverlap> overlap_score(const EmbeddingSet& embeds,
                                        const OverlapOptions& options = {});

struct PlotRow {
  double x = 0.0;
  double y = 0.0;
  std::string sense_key;
  Origin origin = Origin::kReference;

  bool operator==(const PlotRow&) const = default;
};

// Tab-separated `x y sense_key origin` with one header line.
void export_plot_data(const Eigen::MatrixXd& coords,
                      std::span<const EmbeddingLabel> labels,
                      const std::filesystem::path& path);
std::vector<PlotRow> read_plot_data(const std::filesystem::path& path);

void write_overlap_report(std::span<const SenseOverlap> overlaps,
                          const std::filesystem::path& path);

}  // namespace smsmix

#endif  // SMSMIX_DIAGNOSTICS_HPP_
