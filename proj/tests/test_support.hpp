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

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ggan/grammar.hpp"
#include "ggan/lstm.hpp"
#include "ggan/matrix.hpp"
#include "ggan/network.hpp"
#include "ggan/numeric.hpp"
#include "ggan/random.hpp"

namespace ggan::testing {

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = scale * (2.0 * rng.uniform() - 1.0);
  return m;
}

// Random row-stochastic matrix (softmax of random logits).
inline Matrix random_stochastic(Rng& rng, std::size_t rows, std::size_t cols) {
  return softmax_rows(random_matrix(rng, rows, cols, 2.0));
}

inline SequenceBatch random_soft_batch(Rng& rng, std::size_t batch, std::size_t steps) {
  SequenceBatch s;
  for (std::size_t t = 0; t < steps; ++t) s.steps.push_back(random_stochastic(rng, batch, kVocabSize));
  return s;
}

// GradCheckParam entries for every matrix of an LSTM parameter set.
inline std::vector<GradCheckParam> param_refs(LstmParams& value, const LstmParams& grad,
                                              const std::string& prefix = "") {
  std::vector<GradCheckParam> out;
  for (const auto& [name, field] : LstmParams::kFields) {
    out.push_back({prefix + std::string(name), &(value.*field), &(grad.*field)});
  }
  return out;
}

// Parameters whose decoded output is "x" followed by spaces, under both the
// generator wiring (zero first input) and MLE sampling seeded with 'x'. Forget
// gate closed, input/output gates open, so the state only reflects the current
// input: zero input -> h = 0 -> 'x'; an 'x' or ' ' input -> h ~ 0.76 -> ' '.
inline LstmParams x_then_spaces_params(std::size_t hidden) {
  LstmParams p = LstmParams::zeros(kVocabSize, hidden, kVocabSize);
  for (std::size_t j = 0; j < hidden; ++j) {
    p.bias(0, j) = 10.0;
    p.bias(0, hidden + j) = -10.0;
    p.bias(0, 2 * hidden + j) = 10.0;
  }
  p.w_x(Vocabulary::kX, 3 * hidden) = 5.0;
  p.w_x(Vocabulary::kSpace, 3 * hidden) = 5.0;
  p.b_out(0, Vocabulary::kX) = 30.0;
  p.w_out(0, Vocabulary::kSpace) = 80.0;
  return p;
}

// Logits dominated by one symbol regardless of input.
inline LstmParams constant_symbol_params(std::size_t hidden, char symbol, double margin = 30.0) {
  LstmParams p = LstmParams::zeros(kVocabSize, hidden, kVocabSize);
  p.b_out(0, Vocabulary::index(symbol)) = margin;
  return p;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ggan_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ggan::testing
