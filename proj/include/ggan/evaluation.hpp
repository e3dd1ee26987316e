/* Copyright 2026 The ggan Authors. All Rights Reserved.

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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ggan/grammar.hpp"
#include "ggan/network.hpp"
#include "ggan/random.hpp"

namespace ggan {

// n generator samples at tau = 1, decoded by per-step argmax. The argmax of a
// Gumbel-softmax sample does not depend on tau.
std::vector<std::string> sample_generator_text(const Generator& gen, std::size_t n, Rng& rng);

// Fraction of lines accepted by recognize().
double validity_rate(std::span<const std::string> lines);

// Generates n sequences and returns the fraction the grammar accepts. GAN samples
// are decoded by argmax, MLE samples by sampling from the predicted softmax.
double evaluate_validity(const Generator& gen, std::size_t n, Rng& rng);
double evaluate_validity(const LanguageModel& model, std::size_t n, Rng& rng);

std::array<double, kVocabSize> char_frequencies(std::span<const std::string> lines);

struct ValidityReport {
  std::size_t samples = 0;
  double validity_rate = 0.0;
  // prefix_histogram[L] = number of samples whose longest valid prefix has length L.
  std::vector<std::size_t> prefix_histogram;
  std::array<double, kVocabSize> char_freq{};
};

ValidityReport validity_report(std::span<const std::string> lines);

}  // namespace ggan
