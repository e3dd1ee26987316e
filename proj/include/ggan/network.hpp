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
#include <span>
#include <string>
#include <vector>

#include "ggan/grammar.hpp"
#include "ggan/lstm.hpp"
#include "ggan/random.hpp"

namespace ggan {

enum class NoiseTarget { both, hidden_only };

struct GeneratorOptions {
  NoiseTarget noise_target = NoiseTarget::both;
  // Feed a learned vector instead of zeros as the first input.
  bool learned_start = false;

  friend bool operator==(const GeneratorOptions&, const GeneratorOptions&) = default;
};

// Noise -> (C0, h0) -> autoregressive Gumbel-softmax sampling over the vocabulary.
struct Generator {
  LstmParams params;
  GeneratorOptions options;

  static Generator zeros(std::size_t hidden, GeneratorOptions options = {});
  static Generator random(std::size_t hidden, Rng& rng, GeneratorOptions options = {},
                          double init_scale = 0.08, double forget_bias = 1.0);
};

// One generated batch: the relaxed samples, the noise that produced them, and
// the per-step caches needed for backpropagation.
struct GenSample {
  SequenceBatch soft;
  std::vector<Matrix> noise;
  std::vector<std::string> discrete;  // per-step argmax of soft
  double tau = 1.0;
  Matrix z_c;
  Matrix z_h;
  std::vector<StepCache> caches;
};

// z_c is ignored (and may be empty) for NoiseTarget::hidden_only, where the learned
// c0 is used instead.
GenSample generate(const Generator& gen, const Matrix& z_c, const Matrix& z_h, double tau, Rng& rng,
                   std::size_t steps = kSeqLen);
// Replays a generation with caller-supplied Gumbel noise, one batch x d matrix per step.
GenSample generate_with_noise(const Generator& gen, const Matrix& z_c, const Matrix& z_h,
                              double tau, std::span<const Matrix> noise);

struct NoiseGrads {
  Matrix dz_c;
  Matrix dz_h;
};

// dsoft[t] is the upstream gradient on soft.steps[t]. Parameter gradients
// accumulate into grads.
NoiseGrads generate_backward(const Generator& gen, const GenSample& sample,
                             std::span<const Matrix> dsoft, LstmParams& grads);

// Draws (z_c, z_h) ~ U(0,1)^H for a batch. z_c is empty under hidden-only noise.
struct NoisePair {
  Matrix z_c;
  Matrix z_h;
};
NoisePair sample_noise(const Generator& gen, std::size_t batch, Rng& rng);

// LSTM over a sequence from the zero state; P(real) = sigmoid(w . h_T + b).
struct Discriminator {
  LstmParams params;

  static Discriminator zeros(std::size_t hidden);
  static Discriminator random(std::size_t hidden, Rng& rng, double init_scale = 0.08,
                              double forget_bias = 1.0);
};

struct DiscForward {
  std::vector<StepCache> caches;
  Matrix logit;  // batch x 1
  Matrix prob;   // batch x 1
};

DiscForward discriminate_forward(const Discriminator& disc, const SequenceBatch& seq);
Matrix discriminate(const Discriminator& disc, const SequenceBatch& seq);

// dlogit is the upstream gradient on the pre-sigmoid output. Accumulates parameter
// gradients when grads is non-null; returns the gradient on every input step.
std::vector<Matrix> discriminate_backward(const Discriminator& disc, const DiscForward& fwd,
                                          const Matrix& dlogit, LstmParams* grads);

// Teacher-forced next-character predictor.
struct LanguageModel {
  LstmParams params;

  static LanguageModel zeros(std::size_t hidden);
  static LanguageModel random(std::size_t hidden, Rng& rng, double init_scale = 0.08,
                              double forget_bias = 1.0);
};

// Mean cross entropy of steps 2..T given steps 1..T-1, over steps and batch. The
// first character is not modelled.
double mle_forward(const LanguageModel& model, const SequenceBatch& seq);
// Same loss; accumulates gradients into grads.
double mle_loss_and_grad(const LanguageModel& model, const SequenceBatch& seq, LstmParams& grads);

// Autoregressive sampling with the Gumbel-max trick, starting from seed_char.
std::string sample_mle(const LanguageModel& model, std::size_t steps, Rng& rng,
                       std::size_t seed_char = Vocabulary::kX);
std::vector<std::string> sample_mle_batch(const LanguageModel& model, std::size_t n,
                                          std::size_t steps, Rng& rng,
                                          std::size_t seed_char = Vocabulary::kX);

}  // namespace ggan
