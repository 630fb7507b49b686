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

#ifndef SMSMIX_TESTS_ORACLES_HPP_
#define SMSMIX_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "smsmix/spanselect.hpp"
#include "smsmix/toy_biencoder.hpp"

// Independent reference implementations the library is checked against.
namespace smsmix::testing {

// Per side: the maximum score and, among maximal positions, the one closest
// to the target. An empty side contributes the target itself.
Span span_oracle(const std::vector<double>& s, std::size_t t);

// Toy bi-encoder loss recomputed from scratch. `x` holds the input embedding
// of every window position and `g` the gloss vector of every candidate.
double reference_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& q,
                      const Eigen::MatrixXd& g, std::size_t gold);

struct ForwardInputs {
  Eigen::MatrixXd x;
  Eigen::MatrixXd g;
  std::size_t begin = 0;
};

ForwardInputs forward_inputs(const ToyBiEncoder& model,
                             const AnnotatedInstance& inst,
                             const std::vector<SenseEntry>& candidates);

// Max relative error between toy_saliency and central differences of
// reference_loss with the given step.
double saliency_fd_error(const ToyBiEncoder& model,
                         const AnnotatedInstance& inst,
                         const std::vector<SenseEntry>& candidates,
                         double step);

double relative_error(double a, double b);

// Macro-F1 from explicit per-key confusion counts (single-key gold; empty
// prediction = unattempted).
double brute_macro_f1(const std::vector<std::string>& gold,
                      const std::vector<std::string>& pred);

}  // namespace smsmix::testing

#endif  // SMSMIX_TESTS_ORACLES_HPP_
