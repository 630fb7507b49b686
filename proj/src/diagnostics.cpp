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

#include "smsmix/diagnostics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "smsmix/error.hpp"
#include "smsmix/text.hpp"

namespace smsmix {
namespace {

std::string round_trip(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Row-conditional affinities with the bandwidth searched so that each row's
// entropy matches log(perplexity), then symmetrised.
Eigen::MatrixXd joint_affinities(const Eigen::MatrixXd& points,
                                 double perplexity) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dist(i, j) = (points.row(i) - points.row(j)).squaredNorm();
    }
  }
  const double target = std::log(perplexity);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double floor_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) floor_d = std::min(floor_d, dist(i, j));
    }
    double beta = 1.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 200; ++attempt) {
      double sum = 0.0;
      double weighted = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = dist(i, j) - floor_d;
        const double v = std::exp(-d * beta);
        p(i, j) = v;
        sum += v;
        weighted += d * v;
      }
      const double entropy = std::log(sum) + beta * weighted / sum;
      p.row(i) /= sum;
      const double diff = entropy - target;
      if (std::abs(diff) < 1e-5) break;
      if (diff > 0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
      } else {
        hi = beta;
        beta = std::isinf(lo) ? beta / 2.0 : (beta + lo) / 2.0;
      }
    }
  }
  Eigen::MatrixXd joint = (p + p.transpose()) / (2.0 * static_cast<double>(n));
  return joint.cwiseMax(1e-12);
}

struct Probe {
  Eigen::VectorXd w;
  double b = 0.0;
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;
};

Probe fit_probe(const Eigen::MatrixXd& x, const std::vector<int>& y,
                const OverlapOptions& opt) {
  const Eigen::Index m = x.rows();
  const Eigen::Index d = x.cols();
  Probe probe;
  probe.mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - probe.mean;
  probe.scale =
      (centered.array().square().colwise().sum() / static_cast<double>(m))
          .sqrt()
          .matrix();
  for (Eigen::Index c = 0; c < d; ++c) {
    if (probe.scale(c) < 1e-12) probe.scale(c) = 1.0;
  }
  const Eigen::MatrixXd z = centered.array().rowwise() / probe.scale.array();

  // Classes are reweighted to equal total mass.
  std::size_t n1 = 0;
  for (int v : y) n1 += v == 1;
  const std::size_t n0 = y.size() - n1;
  Eigen::VectorXd weight(m), target(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool pos = y[static_cast<std::size_t>(i)] == 1;
    target(i) = pos ? 1.0 : 0.0;
    weight(i) = pos ? (n1 ? 0.5 / static_cast<double>(n1) : 0.0)
                    : (n0 ? 0.5 / static_cast<double>(n0) : 0.0);
  }
  probe.w = Eigen::VectorXd::Zero(d);
  for (std::size_t it = 0; it < opt.iterations; ++it) {
    const Eigen::VectorXd logits = (z * probe.w).array() + probe.b;
    const Eigen::VectorXd prob = (1.0 + (-logits.array()).exp()).inverse();
    const Eigen::VectorXd r = weight.array() * (prob - target).array();
    probe.w -= opt.learning_rate * (z.transpose() * r + opt.l2 * probe.w);
    probe.b -= opt.learning_rate * r.sum();
  }
  return probe;
}

int predict(const Probe& probe, const Eigen::RowVectorXd& row) {
  const Eigen::RowVectorXd z =
      (row - probe.mean).array() / probe.scale.array();
  return z.dot(probe.w) + probe.b > 0.0 ? 1 : 0;
}

}  // namespace

std::string_view to_string(Origin origin) {
  return origin == Origin::kAugmented ? "augmented" : "reference";
}

std::optional<Origin> parse_origin(std::string_view text) {
  if (text == "augmented") return Origin::kAugmented;
  if (text == "reference") return Origin::kReference;
  return std::nullopt;
}

EmbeddingSet embed_targets(const TargetEncoder& encoder,
                           std::span<const TargetExample> examples) {
  const std::size_t d = encoder.dimension();
  std::vector<std::vector<double>> rows;
  EmbeddingSet out;
  for (const auto& ex : examples) {
    std::vector<double> v;
    try {
      v = encoder.encode(ex.sentence, ex.target_index);
    } catch (const std::exception&) {
      ++out.skipped;
      continue;
    }
    bool ok = v.size() == d;
    for (double x : v) ok = ok && std::isfinite(x);
    if (!ok) {
      ++out.skipped;
      continue;
    }
    rows.push_back(std::move(v));
    out.labels.push_back({ex.sense, ex.origin});
  }
  out.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      out.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return out;
}

Eigen::MatrixXd project_2d(const Eigen::MatrixXd& points,
                           const TsneOptions& options) {
  const Eigen::Index n = points.rows();
  if (n < 4) {
    throw DataError("t-SNE needs at least 4 points, got " + std::to_string(n) +
                    "; plot the embeddings directly instead");
  }
  const double perplexity =
      std::min(options.perplexity, static_cast<double>(n - 1) / 3.0);
  const Eigen::MatrixXd p = joint_affinities(points, perplexity);

  Rng rng = Rng::derive(options.seed, "tsne-init");
  Eigen::MatrixXd y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i, 0) = 1e-4 * rng.normal();
    y(i, 1) = 1e-4 * rng.normal();
  }
  Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  Eigen::MatrixXd q(n, n);
  Eigen::MatrixXd grad(n, 2);

  for (std::size_t it = 0; it < options.iterations; ++it) {
    const bool early = it < options.exaggeration_iterations;
    const double exaggeration = early ? options.early_exaggeration : 1.0;
    const double momentum = it < 250 ? 0.5 : 0.8;

    double q_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      q(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double v = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
        q(i, j) = v;
        q(j, i) = v;
        q_sum += 2.0 * v;
      }
    }
    grad.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        const double kernel = q(i, j);
        const double qij = std::max(kernel / q_sum, 1e-12);
        grad.row(i) +=
            4.0 * (exaggeration * p(i, j) - qij) * kernel * (y.row(i) - y.row(j));
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        const bool same_sign = (grad(i, c) > 0) == (velocity(i, c) > 0);
        gains(i, c) = same_sign ? std::max(gains(i, c) * 0.8, 0.01)
                                : gains(i, c) + 0.2;
        velocity(i, c) = momentum * velocity(i, c) -
                         options.learning_rate * gains(i, c) * grad(i, c);
      }
    }
    y += velocity;
    y.rowwise() -= y.colwise().mean();
  }
  return y;
}

double probe_balanced_accuracy(const Eigen::MatrixXd& x,
                               const std::vector<int>& y,
                               const OverlapOptions& options) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (y.size() != n) throw DataError("label count does not match rows");
  std::size_t n1 = 0;
  for (int v : y) n1 += v == 1;
  const std::size_t n0 = n - n1;
  if (n1 < 2 || n0 < 2) throw DataError("need at least two rows per class");

  // Group identical rows; a group is pure-1, pure-0 or mixed.
  std::map<std::vector<double>, std::size_t> group_of_row;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> key(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      key[static_cast<std::size_t>(c)] = x(static_cast<Eigen::Index>(i), c);
    }
    const auto [it, fresh] = group_of_row.emplace(key, groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  const std::size_t k = std::min(options.folds, groups.size());
  if (k < 2) throw DataError("need at least two distinct rows");

  std::array<std::vector<std::size_t>, 3> by_kind;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::size_t ones = 0;
    for (std::size_t i : groups[g]) ones += y[i] == 1;
    const std::size_t kind = ones == groups[g].size() ? 0 : ones == 0 ? 1 : 2;
    by_kind[kind].push_back(g);
  }

  double total = 0.0;
  const std::size_t repeats = std::max<std::size_t>(options.repeats, 1);
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    Rng rng = Rng::derive(options.seed, "probe-folds", rep);
    std::vector<std::size_t> fold_of_group(groups.size());
    std::size_t cursor = 0;
    for (auto kind : by_kind) {
      rng.shuffle(kind.begin(), kind.end());
      for (std::size_t g : kind) fold_of_group[g] = cursor++ % k;
    }
    std::vector<int> fold(n);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t i : groups[g]) fold[i] = static_cast<int>(fold_of_group[g]);
    }
    std::size_t hit1 = 0, hit0 = 0;
    for (std::size_t f = 0; f < k; ++f) {
      std::vector<Eigen::Index> train_rows;
      std::vector<int> train_y;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(fold[i]) != f) {
          train_rows.push_back(static_cast<Eigen::Index>(i));
          train_y.push_back(y[i]);
        }
      }
      Eigen::MatrixXd train(static_cast<Eigen::Index>(train_rows.size()), x.cols());
      for (std::size_t r = 0; r < train_rows.size(); ++r) {
        train.row(static_cast<Eigen::Index>(r)) = x.row(train_rows[r]);
      }
      const Probe probe = fit_probe(train, train_y, options);
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(fold[i]) != f) continue;
        const int pred = predict(probe, x.row(static_cast<Eigen::Index>(i)));
        if (pred == y[i]) (y[i] == 1 ? hit1 : hit0)++;
      }
    }
    total += 0.5 * (static_cast<double>(hit1) / static_cast<double>(n1) +
                    static_cast<double>(hit0) / static_cast<double>(n0));
  }
  return total / static_cast<double>(repeats);
}

std::vector<SenseOverlap> overlap_score(const EmbeddingSet& embeds,
                                        const OverlapOptions& options) {
  std::map<SenseKey, std::vector<std::size_t>> rows_of;
  for (std::size_t i = 0; i < embeds.labels.size(); ++i) {
    rows_of[embeds.labels[i].sense].push_back(i);
  }
  std::vector<SenseOverlap> out;
  for (const auto& [sense, rows] : rows_of) {
    SenseOverlap o;
    o.sense = sense;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()),
                      embeds.vectors.cols());
    std::vector<int> y;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      x.row(static_cast<Eigen::Index>(r)) =
          embeds.vectors.row(static_cast<Eigen::Index>(rows[r]));
      const bool aug = embeds.labels[rows[r]].origin == Origin::kAugmented;
      y.push_back(aug ? 1 : 0);
      (aug ? o.n_augmented : o.n_reference)++;
    }
    if (o.n_augmented == 0 || o.n_reference == 0) {
      o.note = "single origin; skipped";
    } else {
      try {
        o.score = probe_balanced_accuracy(x, y, options);
      } catch (const DataError& e) {
        o.note = std::string("skipped: ") + e.what();
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

void export_plot_data(const Eigen::MatrixXd& coords,
                      std::span<const EmbeddingLabel> labels,
                      const std::filesystem::path& path) {
  if (coords.cols() != 2 ||
      static_cast<std::size_t>(coords.rows()) != labels.size()) {
    throw DataError("plot data: coordinates and labels disagree in shape");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write plot data: " + path.string());
  out << "x\ty\tsense_key\torigin\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out << round_trip(coords(r, 0)) << '\t' << round_trip(coords(r, 1)) << '\t'
        << labels[i].sense.value << '\t' << to_string(labels[i].origin) << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<PlotRow> read_plot_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open plot data: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x\ty\tsense_key\torigin") {
    throw ParseError(path.string() + ": missing plot data header");
  }
  std::vector<PlotRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split(line, '\t');
    const auto origin = f.size() == 4 ? parse_origin(f[3]) : std::nullopt;
    if (!origin) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": malformed plot row");
    }
    rows.push_back({std::stod(f[0]), std::stod(f[1]), f[2], *origin});
  }
  return rows;
}

void write_overlap_report(std::span<const SenseOverlap> overlaps,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write overlap report: " + path.string());
  out << "sense_key\tn_augmented\tn_reference\toverlap_score\tnote\n";
  for (const auto& o : overlaps) {
    char score[32] = "NA";
    if (o.score) std::snprintf(score, sizeof(score), "%.6f", *o.score);
    out << o.sense.value << '\t' << o.n_augmented << '\t' << o.n_reference
        << '\t' << score << '\t' << o.note << '\n';
  }
}

}  // namespace smsmix
