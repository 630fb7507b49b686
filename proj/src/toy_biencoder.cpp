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

#include "smsmix/toy_biencoder.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "smsmix/error.hpp"
#include "smsmix/text.hpp"

namespace smsmix {
namespace {

constexpr std::string_view kMagic = "SMSMIX-TOYBIENC v1";

// Numerically stable softmax of a vector.
Eigen::VectorXd softmax(const Eigen::VectorXd& x) {
  const double top = x.maxCoeff();
  Eigen::VectorXd e = (x.array() - top).exp();
  return e / e.sum();
}

double log_sum_exp(const Eigen::VectorXd& x) {
  const double top = x.maxCoeff();
  return top + std::log((x.array() - top).exp().sum());
}

std::string hex(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, res.ptr);
}

double parse_hex(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto res =
      std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(where + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& s, const std::string& where) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(where + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

ToyBiEncoder::ToyBiEncoder(ToyHyper hyper, std::vector<std::string> vocab)
    : hyper_(hyper), vocab_(std::move(vocab)) {
  if (hyper_.dim < 2) throw ConfigError("toy model dimension must be >= 2");
  for (std::size_t i = 0; i < vocab_.size(); ++i) ids_.emplace(vocab_[i], i);
  embeddings_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab_.size()),
                                      static_cast<Eigen::Index>(hyper_.dim));
  query_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hyper_.dim));
}

ToyBiEncoder ToyBiEncoder::initialize(const AnnotatedCorpus& corpus,
                                      const SenseInventory& inventory,
                                      const ToyHyper& hyper) {
  std::set<std::string> words;
  for (const auto& [id, sentence] : corpus.sentences) {
    for (const auto& tok : sentence->tokens) words.insert(to_lower(tok));
  }
  for (const auto& [lp, entries] : inventory.buckets()) {
    for (const auto& e : entries) {
      for (auto& w : gloss_tokens(e.gloss)) words.insert(std::move(w));
    }
  }
  words.erase(std::string(kUnk));
  std::vector<std::string> vocab{std::string(kUnk)};
  vocab.insert(vocab.end(), words.begin(), words.end());

  ToyBiEncoder model(hyper, std::move(vocab));
  // Each row is seeded by its token, so growing the vocabulary leaves the
  // initial vectors of existing tokens untouched.
  for (Eigen::Index r = 0; r < model.embeddings_.rows(); ++r) {
    Rng rng = Rng::derive(hyper.seed, "toy-init",
                          fnv1a64(model.vocab_[static_cast<std::size_t>(r)]));
    for (Eigen::Index c = 0; c < model.embeddings_.cols(); ++c) {
      model.embeddings_(r, c) = hyper.init_scale * rng.normal();
    }
  }
  for (const auto& [lp, entries] : inventory.buckets()) {
    for (const auto& e : entries) {
      model.gloss_cache_.emplace(e.key, model.gloss_ids(e));
    }
  }
  return model;
}

std::size_t ToyBiEncoder::token_id(std::string_view token) const {
  const auto it = ids_.find(to_lower(token));
  return it == ids_.end() ? 0 : it->second;
}

std::vector<std::size_t> ToyBiEncoder::gloss_ids(const SenseEntry& entry) const {
  const auto cached = gloss_cache_.find(entry.key);
  if (cached != gloss_cache_.end()) return cached->second;
  std::vector<std::size_t> ids;
  for (const auto& w : gloss_tokens(entry.gloss)) ids.push_back(token_id(w));
  if (ids.empty()) ids.push_back(0);
  return ids;
}

std::pair<std::size_t, std::size_t> ToyBiEncoder::window_bounds(
    std::size_t sentence_len, std::size_t target_index) const {
  const std::size_t begin =
      target_index > hyper_.window ? target_index - hyper_.window : 0;
  const std::size_t end =
      std::min(sentence_len - 1, target_index + hyper_.window);
  return {begin, end};
}

Eigen::VectorXd ToyBiEncoder::gloss_vector(const SenseEntry& entry) const {
  const auto ids = gloss_ids(entry);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(embeddings_.cols());
  for (std::size_t id : ids) {
    g += embeddings_.row(static_cast<Eigen::Index>(id)).transpose();
  }
  return g / static_cast<double>(ids.size());
}

ToyBiEncoder::Gradients ToyBiEncoder::gradients(
    const Sentence& sentence, std::size_t target_index,
    std::span<const SenseEntry> candidates, std::size_t gold) const {
  const auto [begin, end] = window_bounds(sentence.tokens.size(), target_index);
  const auto m = static_cast<Eigen::Index>(end - begin + 1);
  const auto d = embeddings_.cols();
  const auto k = static_cast<Eigen::Index>(candidates.size());

  Eigen::MatrixXd x(m, d);
  for (Eigen::Index j = 0; j < m; ++j) {
    x.row(j) = embeddings_.row(static_cast<Eigen::Index>(
        token_id(sentence.tokens[begin + static_cast<std::size_t>(j)])));
  }
  const Eigen::VectorXd attn =
      hyper_.attention ? softmax(x * query_)
                       : Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  const Eigen::VectorXd context = x.transpose() * attn;

  Eigen::MatrixXd glosses(k, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    glosses.row(i) = gloss_vector(candidates[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXd logits = glosses * context;
  const auto g = static_cast<Eigen::Index>(gold);

  Gradients out;
  out.loss = log_sum_exp(logits) - logits(g);
  Eigen::VectorXd residual = softmax(logits);
  residual(g) -= 1.0;

  const Eigen::VectorXd d_context = glosses.transpose() * residual;
  out.glosses.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    out.glosses.push_back(residual(i) * context);
  }

  out.window_begin = begin;
  out.inputs.reserve(static_cast<std::size_t>(m));
  if (hyper_.attention) {
    // Through the attention weights: dL/du_j = a_j (beta_j - sum a beta).
    const Eigen::VectorXd beta = x * d_context;
    const double mean_beta = attn.dot(beta);
    const Eigen::VectorXd gamma =
        attn.array() * (beta.array() - mean_beta);
    for (Eigen::Index j = 0; j < m; ++j) {
      out.inputs.push_back(attn(j) * d_context + gamma(j) * query_);
    }
    out.query = x.transpose() * gamma;
  } else {
    for (Eigen::Index j = 0; j < m; ++j) {
      out.inputs.push_back(attn(j) * d_context);
    }
    out.query = Eigen::VectorXd::Zero(d);
  }
  return out;
}

std::vector<double> ToyBiEncoder::score(
    const Sentence& sentence, std::size_t target_index,
    std::span<const SenseEntry> candidates) const {
  if (candidates.empty() || target_index >= sentence.tokens.size()) return {};
  const auto c = encode(sentence, target_index);
  const Eigen::Map<const Eigen::VectorXd> context(
      c.data(), static_cast<Eigen::Index>(c.size()));
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& cand : candidates) {
    scores.push_back(gloss_vector(cand).dot(context));
  }
  return scores;
}

std::vector<double> ToyBiEncoder::encode(const Sentence& sentence,
                                         std::size_t target_index) const {
  const auto [begin, end] = window_bounds(sentence.tokens.size(), target_index);
  const auto m = static_cast<Eigen::Index>(end - begin + 1);
  Eigen::MatrixXd x(m, embeddings_.cols());
  for (Eigen::Index j = 0; j < m; ++j) {
    x.row(j) = embeddings_.row(static_cast<Eigen::Index>(
        token_id(sentence.tokens[begin + static_cast<std::size_t>(j)])));
  }
  const Eigen::VectorXd attn =
      hyper_.attention ? softmax(x * query_)
                       : Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  const Eigen::VectorXd context = x.transpose() * attn;
  return {context.data(), context.data() + context.size()};
}

std::size_t ToyBiEncoder::gold_position(
    const AnnotatedInstance& instance,
    std::span<const SenseEntry> candidates) const {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].key == instance.gold) return i;
  }
  throw LabelNotCandidate("gold " + instance.gold.value + " of " +
                          instance.instance_id + " is not a candidate");
}

SaliencyVector ToyBiEncoder::token_saliency(
    const AnnotatedInstance& instance,
    std::span<const SenseEntry> candidates) const {
  const std::size_t gold = gold_position(instance, candidates);
  const auto grads =
      gradients(*instance.sentence, instance.target_index, candidates, gold);
  SaliencyVector s(instance.sentence->tokens.size(), 0.0);
  for (std::size_t j = 0; j < grads.inputs.size(); ++j) {
    s[grads.window_begin + j] = grads.inputs[j].norm();
  }
  return s;
}

EpochStats ToyBiEncoder::train_epoch(
    std::span<const AnnotatedInstance* const> order,
    const SenseInventory& inventory, double lr) {
  EpochStats stats;
  double total = 0.0;
  for (const AnnotatedInstance* inst : order) {
    const auto& cands = inventory.senses_of(inst->lemma, inst->pos);
    std::size_t gold = cands.size();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].key == inst->gold) gold = i;
    }
    if (gold == cands.size()) {
      ++stats.skipped;
      continue;
    }
    const auto grads =
        gradients(*inst->sentence, inst->target_index, cands, gold);
    total += grads.loss;
    ++stats.trained;
    if (lr == 0.0) continue;
    for (std::size_t j = 0; j < grads.inputs.size(); ++j) {
      const auto id = static_cast<Eigen::Index>(
          token_id(inst->sentence->tokens[grads.window_begin + j]));
      embeddings_.row(id) -= lr * grads.inputs[j].transpose();
    }
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const auto ids = gloss_ids(cands[i]);
      const double share = lr / static_cast<double>(ids.size());
      for (std::size_t id : ids) {
        embeddings_.row(static_cast<Eigen::Index>(id)) -=
            share * grads.glosses[i].transpose();
      }
    }
    if (hyper_.attention) query_ -= lr * grads.query;
  }
  stats.mean_loss =
      stats.trained ? total / static_cast<double>(stats.trained) : 0.0;
  return stats;
}

std::unique_ptr<WsdModel> ToyBiEncoder::clone() const {
  return std::make_unique<ToyBiEncoder>(*this);
}

bool ToyBiEncoder::operator==(const ToyBiEncoder& other) const {
  return vocab_ == other.vocab_ && gloss_cache_ == other.gloss_cache_ &&
         hyper_.dim == other.hyper_.dim &&
         hyper_.window == other.hyper_.window &&
         hyper_.attention == other.hyper_.attention &&
         embeddings_ == other.embeddings_ && query_ == other.query_;
}

void ToyBiEncoder::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint: " + path.string());
  out << kMagic << '\n'
      << "dim " << hyper_.dim << '\n'
      << "window " << hyper_.window << '\n'
      << "attention " << (hyper_.attention ? 1 : 0) << '\n'
      << "lr " << hex(hyper_.lr) << '\n'
      << "epochs " << hyper_.epochs << '\n'
      << "seed " << hyper_.seed << '\n'
      << "init_scale " << hex(hyper_.init_scale) << '\n'
      << "vocab " << vocab_.size() << '\n';
  for (const auto& w : vocab_) out << w << '\n';
  out << "glosses " << gloss_cache_.size() << '\n';
  for (const auto& [key, ids] : gloss_cache_) {
    out << key.value;
    for (std::size_t id : ids) out << ' ' << id;
    out << '\n';
  }
  out << "embeddings\n";
  for (Eigen::Index r = 0; r < embeddings_.rows(); ++r) {
    for (Eigen::Index c = 0; c < embeddings_.cols(); ++c) {
      out << (c ? " " : "") << hex(embeddings_(r, c));
    }
    out << '\n';
  }
  out << "query\n";
  for (Eigen::Index c = 0; c < query_.size(); ++c) {
    out << (c ? " " : "") << hex(query_(c));
  }
  out << "\nend\n";
}

ToyBiEncoder ToyBiEncoder::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint: " + path.string());
  std::size_t line_no = 0;
  std::string line;
  const auto where = [&] { return path.string() + ":" + std::to_string(line_no); };
  const auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) {
      throw ParseError(path.string() + ": truncated checkpoint");
    }
    ++line_no;
    return line;
  };
  const auto field = [&](std::string_view name) -> std::string {
    const auto parts = split(next_line(), ' ', 2);
    if (parts.size() != 2 || parts[0] != name) {
      throw ParseError(where() + ": expected '" + std::string(name) + "'");
    }
    return parts[1];
  };

  if (next_line() != kMagic) {
    throw ParseError(path.string() + ": not a toy bi-encoder checkpoint");
  }
  ToyHyper hyper;
  hyper.dim = parse_size(field("dim"), where());
  hyper.window = parse_size(field("window"), where());
  hyper.attention = parse_size(field("attention"), where()) != 0;
  hyper.lr = parse_hex(field("lr"), where());
  hyper.epochs = parse_size(field("epochs"), where());
  hyper.seed = parse_size(field("seed"), where());
  hyper.init_scale = parse_hex(field("init_scale"), where());
  const std::size_t n_vocab = parse_size(field("vocab"), where());
  std::vector<std::string> vocab;
  vocab.reserve(n_vocab);
  for (std::size_t i = 0; i < n_vocab; ++i) vocab.push_back(next_line());
  ToyBiEncoder model(hyper, std::move(vocab));

  const std::size_t n_gloss = parse_size(field("glosses"), where());
  for (std::size_t i = 0; i < n_gloss; ++i) {
    const auto parts = split_whitespace(next_line());
    if (parts.size() < 2) throw ParseError(where() + ": bad gloss row");
    std::vector<std::size_t> ids;
    for (std::size_t j = 1; j < parts.size(); ++j) {
      ids.push_back(parse_size(parts[j], where()));
      if (ids.back() >= n_vocab) throw ParseError(where() + ": id out of range");
    }
    model.gloss_cache_.emplace(SenseKey(parts[0]), std::move(ids));
  }
  if (next_line() != "embeddings") throw ParseError(where() + ": expected embeddings");
  for (Eigen::Index r = 0; r < model.embeddings_.rows(); ++r) {
    const auto parts = split_whitespace(next_line());
    if (parts.size() != hyper.dim) throw ParseError(where() + ": bad row width");
    for (std::size_t c = 0; c < parts.size(); ++c) {
      model.embeddings_(r, static_cast<Eigen::Index>(c)) =
          parse_hex(parts[c], where());
    }
  }
  if (next_line() != "query") throw ParseError(where() + ": expected query");
  const auto parts = split_whitespace(next_line());
  if (parts.size() != hyper.dim) throw ParseError(where() + ": bad query width");
  for (std::size_t c = 0; c < parts.size(); ++c) {
    model.query_(static_cast<Eigen::Index>(c)) = parse_hex(parts[c], where());
  }
  if (next_line() != "end") throw ParseError(where() + ": expected end");
  return model;
}

ToyTrainResult toy_train(const AnnotatedCorpus& corpus,
                         const SenseInventory& inventory,
                         const ToyHyper& hyper) {
  ToyTrainResult result{ToyBiEncoder::initialize(corpus, inventory, hyper), {},
                        0};
  std::vector<const AnnotatedInstance*> order;
  order.reserve(corpus.instances.size());
  for (const auto& inst : corpus.instances) order.push_back(&inst);
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    Rng rng = Rng::derive(hyper.seed, "toy-train-order", epoch);
    rng.shuffle(order.begin(), order.end());
    const auto stats = result.model.train_epoch(order, inventory, hyper.lr);
    if (!std::isfinite(stats.mean_loss)) {
      throw TrainingDiverged("toy training diverged at epoch " +
                             std::to_string(epoch));
    }
    result.epoch_losses.push_back(stats.mean_loss);
    result.skipped_instances = stats.skipped;
  }
  return result;
}

}  // namespace smsmix
