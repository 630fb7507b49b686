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

#ifndef SMSMIX_TOOLS_CLI_HPP_
#define SMSMIX_TOOLS_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace smsmix::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBackend = 4;

// Everything a subcommand may read. Populated from flags and, optionally, a
// key=value config file; flags win.
struct RunConfig {
  // Inputs.
  std::string xml;
  std::string gold;
  std::string inventory;
  std::string external;
  std::string augmented;
  std::string train_xml;
  std::string train_gold;
  std::string eval_xml;
  std::string eval_gold;
  std::string dev_xml;
  std::string dev_gold;
  std::string predictions;
  std::string embeddings;
  std::string out = ".";

  // Augmentation plan.
  std::string mode = "external";
  std::size_t per_sense = 3;
  double lfs_fraction = 0.5;
  std::string selection = "random";
  std::size_t retry_limit = 5;
  double max_fraction = 0.5;

  // Backends.
  std::string backend = "toy";  // toy | adapter
  std::string adapter;          // shell command for the adapter process
  std::string model;            // toy checkpoint; may contain {seed}
  std::string infiller = "template";  // template | identity | adapter
  std::string judge = "rule";         // rule | accept-all | adapter

  std::uint64_t seed = 0;
  std::size_t n_seeds = 1;
  std::size_t workers = 1;

  // Toy model hyperparameters.
  std::size_t toy_dim = 16;
  std::size_t toy_window = 5;
  std::size_t toy_epochs = 10;
  double toy_lr = 0.1;

  // Two-stage training. A negative stage-2 rate means stage-1 rate / 100.
  double stage2_lr = -1.0;
  std::size_t stage2_epochs = 1;

  // Evaluation.
  std::string dataset = "eval";
  std::string unit = "sense";  // sense | lemma

  // Diagnostics.
  double perplexity = 30.0;
  std::size_t tsne_iterations = 1000;
  std::size_t folds = 5;
  std::size_t repeats = 4;
};

// Runs `smsmix <args...>` (args exclude the program name) and returns the
// exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Replaces every "{seed}" in `pattern` with `seed`.
std::string expand_seed(const std::string& pattern, std::uint64_t seed);

}  // namespace smsmix::cli

#endif  // SMSMIX_TOOLS_CLI_HPP_
