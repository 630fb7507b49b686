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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>

#include "smsmix/augmentor.hpp"
#include "smsmix/corpus.hpp"
#include "smsmix/diagnostics.hpp"
#include "smsmix/error.hpp"
#include "smsmix/inventory.hpp"
#include "smsmix/process_adapter.hpp"
#include "smsmix/reference_backends.hpp"
#include "smsmix/text.hpp"
#include "smsmix/toy_biencoder.hpp"
#include "smsmix/training.hpp"
#include "smsmix/wsdeval.hpp"

namespace smsmix::cli {
namespace fs = std::filesystem;

std::string expand_seed(const std::string& pattern, std::uint64_t seed) {
  static const std::string kPlaceholder = "{seed}";
  std::string out = pattern;
  const std::string value = std::to_string(seed);
  for (auto pos = out.find(kPlaceholder); pos != std::string::npos;
       pos = out.find(kPlaceholder, pos + value.size())) {
    out.replace(pos, kPlaceholder.size(), value);
  }
  return out;
}

namespace {

void require_flag(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw ConfigError(std::string("missing required option ") + flag);
  }
}

fs::path out_dir(const RunConfig& c) {
  fs::path dir(c.out);
  fs::create_directories(dir);
  return dir;
}

AnnotatedCorpus load_pair(const std::string& xml, const std::string& gold,
                          const char* xml_flag, const char* gold_flag) {
  require_flag(xml, xml_flag);
  require_flag(gold, gold_flag);
  AnnotatedCorpus corpus = load_annotated_corpus(xml, gold);
  if (corpus.empty()) {
    throw EmptyCorpus("corpus " + xml + " has no annotated instances");
  }
  return corpus;
}

AnnotatedCorpus load_main_corpus(const RunConfig& c) {
  return load_pair(c.xml, c.gold, "--xml", "--gold");
}

SenseInventory load_main_inventory(const RunConfig& c) {
  require_flag(c.inventory, "--inventory");
  return load_inventory(c.inventory);
}

ToyHyper toy_hyper(const RunConfig& c, std::uint64_t seed) {
  ToyHyper h;
  h.dim = c.toy_dim;
  h.window = c.toy_window;
  h.epochs = c.toy_epochs;
  h.lr = c.toy_lr;
  h.seed = seed;
  return h;
}

// A checkpoint from --model, or a toy model trained on the spot.
std::unique_ptr<ToyBiEncoder> toy_model(const RunConfig& c,
                                        const AnnotatedCorpus& corpus,
                                        const SenseInventory& inventory,
                                        std::uint64_t seed, std::ostream& err) {
  if (!c.model.empty()) {
    return std::make_unique<ToyBiEncoder>(
        ToyBiEncoder::load(expand_seed(c.model, seed)));
  }
  err << "training toy model (" << c.toy_epochs << " epochs)\n";
  auto result = toy_train(corpus, inventory, toy_hyper(c, seed));
  return std::make_unique<ToyBiEncoder>(std::move(result.model));
}

std::unique_ptr<ProcessAdapter> make_adapter(const RunConfig& c) {
  require_flag(c.adapter, "--adapter");
  return std::make_unique<ProcessAdapter>(c.adapter);
}

MacroUnit parse_unit(const std::string& text) {
  if (text == "sense") return MacroUnit::kBySense;
  if (text == "lemma") return MacroUnit::kByLemma;
  throw ConfigError("unknown --unit '" + text + "' (sense|lemma)");
}

// ---------------------------------------------------------------- stats

int cmd_stats(const RunConfig& c, std::ostream& out) {
  const AnnotatedCorpus corpus = load_main_corpus(c);
  const FrequencyTable table = sense_frequencies(corpus);
  const fs::path dir = out_dir(c);
  {
    std::ofstream f(dir / "stats.tsv", std::ios::binary);
    f << "lemma\tpos\tsense_key\tcount\tis_mfs\n" << table.serialize();
  }

  std::size_t mfs_instances = 0;
  std::size_t polysemous = 0;
  double max_ratio = 0.0;
  double ratio_sum = 0.0;
  for (const auto& [lp, counts] : table.counts) {
    const SenseKey* top = table.mfs_of(lp);
    std::size_t top_count = counts.at(*top);
    std::size_t low = top_count;
    for (const auto& [key, n] : counts) low = std::min(low, n);
    mfs_instances += top_count;
    if (counts.size() > 1) {
      ++polysemous;
      const double ratio = static_cast<double>(top_count) / low;
      ratio_sum += ratio;
      max_ratio = std::max(max_ratio, ratio);
    }
  }
  const auto lfs = lfs_senses(table);
  char buf[64];
  std::ofstream summary(dir / "summary.tsv", std::ios::binary);
  const auto emit = [&](const std::string& key, const std::string& value) {
    out << key << '\t' << value << '\n';
    summary << key << '\t' << value << '\n';
  };
  emit("instances", std::to_string(corpus.size()));
  emit("lemma_pos", std::to_string(table.counts.size()));
  emit("senses", std::to_string(table.distinct_senses()));
  emit("mfs_instances", std::to_string(mfs_instances));
  emit("lfs_instances", std::to_string(corpus.size() - mfs_instances));
  emit("lfs_senses", std::to_string(lfs.size()));
  emit("polysemous_lemma_pos", std::to_string(polysemous));
  std::snprintf(buf, sizeof buf, "%.6f",
                polysemous ? ratio_sum / static_cast<double>(polysemous) : 0.0);
  emit("mean_mfs_to_rarest_ratio", buf);
  std::snprintf(buf, sizeof buf, "%.6f", max_ratio);
  emit("max_mfs_to_rarest_ratio", buf);
  return kExitOk;
}

// -------------------------------------------------------------- augment

int cmd_augment(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto mode = parse_injection_mode(c.mode);
  if (!mode) {
    throw ConfigError("unknown --mode '" + c.mode +
                      "' (oversample|internal|external)");
  }
  const auto policy = parse_selection_policy(c.selection);
  if (!policy) {
    throw ConfigError("unknown --selection '" + c.selection +
                      "' (random|rarest)");
  }
  const AnnotatedCorpus corpus = load_main_corpus(c);
  const SenseInventory inventory = load_main_inventory(c);
  const FrequencyTable table = sense_frequencies(corpus);

  AugmentationPlan plan;
  plan.mode = *mode;
  plan.per_sense = c.per_sense;
  plan.lfs_fraction = c.lfs_fraction;
  plan.selection_policy = *policy;
  plan.retry_limit = c.retry_limit;
  plan.seed = c.seed;
  plan.max_fraction = c.max_fraction;
  Rng pick = Rng::derive(c.seed, "select-targets");
  plan.targets = select_lfs_targets(table, c.lfs_fraction, pick, *policy);

  AugmentedDataset dataset;
  if (*mode == InjectionMode::kOversample) {
    dataset = oversample(corpus, plan);
  } else {
    std::unique_ptr<ProcessAdapter> adapter;
    const auto need_adapter = [&]() -> ProcessAdapter& {
      if (!adapter) adapter = make_adapter(c);
      return *adapter;
    };

    std::unique_ptr<ToyBiEncoder> toy;
    const SaliencyBackend* saliency = nullptr;
    if (c.backend == "toy") {
      toy = toy_model(c, corpus, inventory, c.seed, err);
      saliency = toy.get();
    } else if (c.backend == "adapter") {
      saliency = &need_adapter();
    } else {
      throw ConfigError("unknown --backend '" + c.backend + "' (toy|adapter)");
    }

    std::unique_ptr<InfillEngine> own_infill;
    const InfillEngine* infill = nullptr;
    if (c.infiller == "template" || c.infiller == "identity") {
      own_infill = std::make_unique<TemplateInfiller>(
          c.infiller == "template" ? TemplateInfiller::Mode::kTemplate
                                   : TemplateInfiller::Mode::kIdentity);
      infill = own_infill.get();
    } else if (c.infiller == "adapter") {
      infill = &need_adapter();
    } else {
      throw ConfigError("unknown --infiller '" + c.infiller +
                        "' (template|identity|adapter)");
    }

    std::unique_ptr<AcceptabilityJudge> own_judge;
    const AcceptabilityJudge* judge = nullptr;
    if (c.judge == "rule") {
      own_judge = std::make_unique<RuleJudge>();
      judge = own_judge.get();
    } else if (c.judge == "accept-all") {
      own_judge = std::make_unique<AcceptAllJudge>();
      judge = own_judge.get();
    } else if (c.judge == "adapter") {
      judge = &need_adapter();
    } else {
      throw ConfigError("unknown --judge '" + c.judge +
                        "' (rule|accept-all|adapter)");
    }

    ExternalCorpus external;
    if (*mode == InjectionMode::kExternal) {
      require_flag(c.external, "--external");
      external = load_external_corpus(c.external);
    }
    const SenseIndex index(corpus);
    MixDeps deps;
    deps.saliency = saliency;
    deps.infill = infill;
    deps.judge = judge;
    deps.inventory = &inventory;
    deps.corpus = &corpus;
    deps.index = &index;
    deps.table = &table;
    deps.external = &external;
    deps.max_fraction = c.max_fraction;
    dataset = generate(corpus, plan, deps, c.workers);
  }

  const fs::path path = out_dir(c) / "augmented.jsonl";
  write_dataset(dataset, path);
  out << "targets\t" << plan.targets.size() << '\n'
      << "attempted\t" << dataset.stats.attempted << '\n'
      << "accepted\t" << dataset.stats.accepted << '\n'
      << "rejected\t" << dataset.stats.rejected << '\n'
      << "skipped_senses\t" << dataset.stats.skipped_senses << '\n'
      << "output\t" << path.string() << '\n';
  if (dataset.stats.accepted == 0 && !plan.targets.empty()) {
    err << "error: no augmented example was accepted\n";
    return kExitData;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- train

std::vector<std::uint64_t> seed_list(const RunConfig& c) {
  if (c.n_seeds == 0) throw ConfigError("--n-seeds must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < c.n_seeds; ++i) seeds.push_back(c.seed + i);
  return seeds;
}

fs::path seed_dir(const RunConfig& c, std::uint64_t seed) {
  fs::path dir = out_dir(c);
  if (c.n_seeds > 1) {
    dir /= "seed-" + std::to_string(seed);
    fs::create_directories(dir);
  }
  return dir;
}

void emit_report(const EvalReport& report, std::ostream& out) {
  out << "dataset\tsubset\tn_instances\tn_senses\tmicro_f1\tmacro_f1\n";
  char buf[64];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f", row.micro_f1, row.macro_f1);
    out << row.dataset << '\t' << row.subset << '\t' << row.n_instances << '\t'
        << row.n_senses << '\t' << buf << '\n';
  }
}

int cmd_train(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const AnnotatedCorpus corpus = load_main_corpus(c);
  const SenseInventory inventory = load_main_inventory(c);
  AnnotatedCorpus assembled = corpus;
  if (!c.augmented.empty()) {
    assembled = assemble_training_set(corpus, read_dataset(c.augmented));
  }
  std::optional<AnnotatedCorpus> dev;
  std::optional<AnnotatedCorpus> eval;
  if (!c.dev_xml.empty() || !c.dev_gold.empty()) {
    dev = load_pair(c.dev_xml, c.dev_gold, "--dev-xml", "--dev-gold");
  }
  if (!c.eval_xml.empty() || !c.eval_gold.empty()) {
    eval = load_pair(c.eval_xml, c.eval_gold, "--eval-xml", "--eval-gold");
  }
  const FrequencyTable table = sense_frequencies(corpus);

  std::vector<EvalReport> reports;
  for (const std::uint64_t seed : seed_list(c)) {
    const ToyHyper hyper = toy_hyper(c, seed);
    const ModelFactory factory = [&]() -> std::unique_ptr<WsdModel> {
      return std::make_unique<ToyBiEncoder>(
          ToyBiEncoder::initialize(assembled, inventory, hyper));
    };
    TrainConfig cfg = TrainConfig::standard(c.toy_lr, c.toy_epochs, seed);
    if (c.stage2_lr >= 0.0) cfg.stage2.lr = c.stage2_lr;
    cfg.stage2.epochs = c.stage2_epochs;
    DevSet dev_set;
    if (dev) dev_set = DevSet{&*dev, &table};

    err << "seed " << seed << ": training\n";
    const TwoStageResult result =
        two_stage_train(factory, corpus, assembled, inventory, cfg, dev_set);
    const fs::path dir = seed_dir(c, seed);
    result.stage1->save(dir / "stage1.ckpt");
    result.model->save(dir / "model.ckpt");
    write_metrics(result.metrics, dir / "metrics.jsonl");

    if (eval) {
      EvalOptions opts;
      opts.dataset = c.dataset;
      opts.model_id = (dir / "model.ckpt").string();
      opts.seed = seed;
      opts.unit = parse_unit(c.unit);
      EvalReport report =
          evaluate(*result.model, *eval, inventory, table, opts);
      write_report(report, dir / "report.tsv");
      write_predictions(report.predictions, dir / "predictions.tsv");
      if (c.n_seeds == 1) emit_report(report, out);
      reports.push_back(std::move(report));
    }
  }
  if (eval && c.n_seeds > 1) {
    const fs::path path = out_dir(c) / "report.tsv";
    write_multi_seed_report(reports, path);
    std::ifstream in(path);
    out << in.rdbuf();
  }
  return kExitOk;
}

// ----------------------------------------------------------------- eval

int cmd_eval(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const AnnotatedCorpus corpus = load_main_corpus(c);
  const SenseInventory inventory = load_main_inventory(c);
  const AnnotatedCorpus train =
      load_pair(c.train_xml, c.train_gold, "--train-xml", "--train-gold");
  const FrequencyTable table = sense_frequencies(train);
  EvalOptions opts;
  opts.dataset = c.dataset;
  opts.unit = parse_unit(c.unit);

  if (!c.predictions.empty()) {
    if (!c.model.empty()) {
      throw ConfigError("--predictions and --model are mutually exclusive");
    }
    opts.model_id = c.predictions;
    opts.seed = c.seed;
    const EvalReport report = score_predictions(
        read_predictions(c.predictions), corpus, table, &inventory, opts);
    write_report(report, out_dir(c) / "report.tsv");
    emit_report(report, out);
    return kExitOk;
  }
  require_flag(c.model, "--model or --predictions");
  if (c.n_seeds > 1 && c.model.find("{seed}") == std::string::npos) {
    throw ConfigError("--n-seeds > 1 needs a {seed} placeholder in --model");
  }

  std::vector<EvalReport> reports;
  for (const std::uint64_t seed : seed_list(c)) {
    const std::string path = expand_seed(c.model, seed);
    err << "evaluating " << path << '\n';
    const ToyBiEncoder model = ToyBiEncoder::load(path);
    opts.model_id = path;
    opts.seed = seed;
    EvalReport report = evaluate(model, corpus, inventory, table, opts);
    const fs::path dir = out_dir(c);
    const std::string suffix =
        c.n_seeds > 1 ? ".seed-" + std::to_string(seed) : std::string();
    write_report(report, dir / ("report" + suffix + ".tsv"));
    write_predictions(report.predictions,
                      dir / ("predictions" + suffix + ".tsv"));
    if (c.n_seeds == 1) emit_report(report, out);
    reports.push_back(std::move(report));
  }
  if (c.n_seeds > 1) {
    const fs::path path = out_dir(c) / "report.tsv";
    write_multi_seed_report(reports, path);
    std::ifstream in(path);
    out << in.rdbuf();
  }
  return kExitOk;
}

// ------------------------------------------------------------- diagnose

// Rows of `sense_key <TAB> origin <TAB> v1 <TAB> v2 ...`.
EmbeddingSet read_embeddings(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings file " + path.string());
  std::vector<std::vector<double>> rows;
  EmbeddingSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    const auto fields = split(line, '\t');
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() < 3) throw ParseError(where + ": expected >= 3 fields");
    const auto origin = parse_origin(fields[1]);
    if (!origin) throw ParseError(where + ": unknown origin '" + fields[1] + "'");
    std::vector<double> v;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      try {
        v.push_back(std::stod(fields[i]));
      } catch (const std::exception&) {
        throw ParseError(where + ": bad number '" + fields[i] + "'");
      }
    }
    if (!rows.empty() && v.size() != rows.front().size()) {
      throw ParseError(where + ": inconsistent vector width");
    }
    rows.push_back(std::move(v));
    set.labels.push_back({SenseKey(fields[0]), *origin});
  }
  if (rows.empty()) throw EmptyCorpus("no embeddings in " + path.string());
  set.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      set.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
          rows[r][k];
    }
  }
  return set;
}

EmbeddingSet encode_from_data(const RunConfig& c, std::ostream& err) {
  require_flag(c.augmented, "--augmented or --embeddings");
  const AugmentedDataset dataset = read_dataset(c.augmented);
  const AnnotatedCorpus corpus = load_main_corpus(c);
  std::set<SenseKey> senses;
  std::vector<TargetExample> examples;
  for (const auto& ex : dataset.examples) {
    senses.insert(ex.label);
    examples.push_back(
        {ex.sentence, ex.target_index, ex.label, Origin::kAugmented});
  }
  for (const auto& inst : corpus.instances) {
    if (senses.count(inst.gold)) {
      examples.push_back({*inst.sentence, inst.target_index, inst.gold,
                          Origin::kReference});
    }
  }
  if (c.backend == "adapter") {
    const auto adapter = make_adapter(c);
    return embed_targets(*adapter, examples);
  }
  if (c.backend != "toy") {
    throw ConfigError("unknown --backend '" + c.backend + "' (toy|adapter)");
  }
  const SenseInventory inventory = load_main_inventory(c);
  const auto model = toy_model(c, corpus, inventory, c.seed, err);
  return embed_targets(*model, examples);
}

int cmd_diagnose(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const EmbeddingSet embeds = c.embeddings.empty()
                                  ? encode_from_data(c, err)
                                  : read_embeddings(c.embeddings);
  if (embeds.skipped > 0) {
    err << "skipped " << embeds.skipped << " examples the encoder rejected\n";
  }
  OverlapOptions overlap;
  overlap.folds = c.folds;
  overlap.repeats = c.repeats;
  overlap.seed = c.seed;
  const auto scores = overlap_score(embeds, overlap);
  const fs::path dir = out_dir(c);
  write_overlap_report(scores, dir / "overlap.tsv");
  {
    std::ifstream in(dir / "overlap.tsv");
    out << in.rdbuf();
  }
  if (embeds.vectors.rows() >= 4) {
    TsneOptions tsne;
    tsne.perplexity = c.perplexity;
    tsne.iterations = c.tsne_iterations;
    tsne.seed = c.seed;
    const Eigen::MatrixXd coords = project_2d(embeds.vectors, tsne);
    export_plot_data(coords, embeds.labels, dir / "plot.tsv");
  } else {
    err << "fewer than 4 embeddings; no projection written\n";
  }
  return kExitOk;
}

void add_shared(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "key=value config file; flags win");
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--workers", c.workers, "generation worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--n-seeds", c.n_seeds, "run seeds [seed, seed + n)")
      ->capture_default_str();
  app.add_option("--xml", c.xml, "annotated corpus XML")
      ->check(CLI::ExistingFile);
  app.add_option("--gold", c.gold, "gold key file")->check(CLI::ExistingFile);
  app.add_option("--inventory", c.inventory, "sense inventory TSV")
      ->check(CLI::ExistingFile);
  app.add_option("--backend", c.backend, "toy|adapter")->capture_default_str();
  app.add_option("--adapter", c.adapter, "adapter process command");
  app.add_option("--model", c.model, "toy checkpoint (may contain {seed})");
  app.add_option("--toy-dim", c.toy_dim)->capture_default_str();
  app.add_option("--toy-window", c.toy_window)->capture_default_str();
  app.add_option("--toy-epochs", c.toy_epochs)->capture_default_str();
  app.add_option("--toy-lr", c.toy_lr)->capture_default_str();
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kData:
      return kExitData;
    case ErrorKind::kBackend:
      return kExitBackend;
  }
  return kExitData;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig c;
  CLI::App app{"Sense-maintained span mixing for WSD data augmentation",
               "smsmix"};
  app.require_subcommand(1);
  app.fallthrough();
  add_shared(app, c);

  auto* stats = app.add_subcommand("stats", "sense frequency report");

  auto* augment = app.add_subcommand("augment", "generate augmented examples");
  augment->add_option("--mode", c.mode, "oversample|internal|external")
      ->capture_default_str();
  augment->add_option("--per-sense", c.per_sense)->capture_default_str();
  augment->add_option("--lfs-fraction", c.lfs_fraction)->capture_default_str();
  augment->add_option("--selection", c.selection, "random|rarest")
      ->capture_default_str();
  augment->add_option("--retry-limit", c.retry_limit)->capture_default_str();
  augment->add_option("--max-fraction", c.max_fraction)->capture_default_str();
  augment->add_option("--external", c.external, "external sentence file")
      ->check(CLI::ExistingFile);
  augment->add_option("--infiller", c.infiller, "template|identity|adapter")
      ->capture_default_str();
  augment->add_option("--judge", c.judge, "rule|accept-all|adapter")
      ->capture_default_str();

  auto* train = app.add_subcommand("train", "two-stage training");
  train->add_option("--augmented", c.augmented, "augmented dataset")
      ->check(CLI::ExistingFile);
  train->add_option("--stage2-lr", c.stage2_lr, "default: toy-lr / 100");
  train->add_option("--stage2-epochs", c.stage2_epochs)->capture_default_str();
  train->add_option("--dev-xml", c.dev_xml)->check(CLI::ExistingFile);
  train->add_option("--dev-gold", c.dev_gold)->check(CLI::ExistingFile);
  train->add_option("--eval-xml", c.eval_xml)->check(CLI::ExistingFile);
  train->add_option("--eval-gold", c.eval_gold)->check(CLI::ExistingFile);
  train->add_option("--dataset", c.dataset)->capture_default_str();
  train->add_option("--unit", c.unit, "sense|lemma")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "score a model or predictions");
  eval->add_option("--train-xml", c.train_xml)->check(CLI::ExistingFile);
  eval->add_option("--train-gold", c.train_gold)->check(CLI::ExistingFile);
  eval->add_option("--predictions", c.predictions)->check(CLI::ExistingFile);
  eval->add_option("--dataset", c.dataset)->capture_default_str();
  eval->add_option("--unit", c.unit, "sense|lemma")->capture_default_str();

  auto* diagnose =
      app.add_subcommand("diagnose", "sense-maintenance diagnostic");
  diagnose->add_option("--augmented", c.augmented)->check(CLI::ExistingFile);
  diagnose->add_option("--embeddings", c.embeddings, "precomputed vectors")
      ->check(CLI::ExistingFile);
  diagnose->add_option("--perplexity", c.perplexity)->capture_default_str();
  diagnose->add_option("--tsne-iterations", c.tsne_iterations)
      ->capture_default_str();
  diagnose->add_option("--folds", c.folds)->capture_default_str();
  diagnose->add_option("--repeats", c.repeats)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (stats->parsed()) return cmd_stats(c, out);
    if (augment->parsed()) return cmd_augment(c, out, err);
    if (train->parsed()) return cmd_train(c, out, err);
    if (eval->parsed()) return cmd_eval(c, out, err);
    if (diagnose->parsed()) return cmd_diagnose(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}

}  // namespace smsmix::cli
