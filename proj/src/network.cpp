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

#include "ggan/network.hpp"

#include <algorithm>

#include "ggan/errors.hpp"
#include "ggan/numeric.hpp"

namespace ggan {
namespace {

Matrix broadcast_rows(const Matrix& row, std::size_t batch) {
  Matrix out(batch, row.cols());
  for (std::size_t b = 0; b < batch; ++b) std::copy(row.values().begin(), row.values().end(), out.row(b).begin());
  return out;
}

}  // namespace

Generator Generator::zeros(std::size_t hidden, GeneratorOptions options) {
  return {LstmParams::zeros(kVocabSize, hidden, kVocabSize), options};
}

Generator Generator::random(std::size_t hidden, Rng& rng, GeneratorOptions options,
                            double init_scale, double forget_bias) {
  return {LstmParams::random(kVocabSize, hidden, kVocabSize, rng, init_scale, forget_bias), options};
}

NoisePair sample_noise(const Generator& gen, std::size_t batch, Rng& rng) {
  NoisePair z;
  if (gen.options.noise_target == NoiseTarget::both) {
    z.z_c = uniform_noise(rng, batch, gen.params.hidden_size);
  }
  z.z_h = uniform_noise(rng, batch, gen.params.hidden_size);
  return z;
}

GenSample generate_with_noise(const Generator& gen, const Matrix& z_c, const Matrix& z_h,
                              double tau, std::span<const Matrix> noise) {
  const LstmParams& p = gen.params;
  const std::size_t batch = z_h.rows();
  if (z_h.cols() != p.hidden_size) {
    throw ShapeError("generate: z_h " + z_h.shape_string() + " does not match hidden size " +
                     std::to_string(p.hidden_size));
  }
  LstmState state;
  if (gen.options.noise_target == NoiseTarget::hidden_only) {
    state.c = broadcast_rows(p.c0, batch);
  } else {
    require_same_shape(z_c, z_h, "generate (z_c vs z_h)");
    state.c = z_c;
  }
  state.h = z_h;
  Matrix x = gen.options.learned_start ? broadcast_rows(p.x0, batch) : Matrix(batch, p.input_size);

  GenSample out;
  out.tau = tau;
  out.z_c = z_c;
  out.z_h = z_h;
  out.noise.assign(noise.begin(), noise.end());
  out.caches.reserve(noise.size());
  out.soft.steps.reserve(noise.size());
  for (const Matrix& g : noise) {
    StepCache cache = lstm_cell_forward(p, state, x);
    Matrix y = gumbel_softmax_with_noise(readout_forward(p, cache.h), g, tau);
    state = {cache.c, cache.h};
    x = y;
    out.caches.push_back(std::move(cache));
    out.soft.steps.push_back(std::move(y));
  }
  out.discrete = decode_argmax(out.soft);
  return out;
}

GenSample generate(const Generator& gen, const Matrix& z_c, const Matrix& z_h, double tau, Rng& rng,
                   std::size_t steps) {
  if (!(tau > 0.0)) throw DomainError("generate: tau must be positive");
  std::vector<Matrix> noise;
  noise.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) noise.push_back(gumbel_noise(rng, z_h.rows(), kVocabSize));
  return generate_with_noise(gen, z_c, z_h, tau, noise);
}

NoiseGrads generate_backward(const Generator& gen, const GenSample& sample,
                             std::span<const Matrix> dsoft, LstmParams& grads) {
  const LstmParams& p = gen.params;
  const std::size_t steps = sample.caches.size();
  if (dsoft.size() != steps) throw ShapeError("generate_backward: need one gradient per step");
  const std::size_t batch = sample.z_h.rows();

  Matrix dh(batch, p.hidden_size);
  Matrix dc(batch, p.hidden_size);
  Matrix dx_next(batch, p.input_size);
  for (std::size_t t = steps; t-- > 0;) {
    const StepCache& cache = sample.caches[t];
    const Matrix dy = add(dsoft[t], dx_next);
    const Matrix dlogits = gumbel_softmax_backward(sample.soft.steps[t], dy, sample.tau);
    const Matrix dh_total = add(dh, readout_backward(p, cache.h, dlogits, grads));
    CellInputGrads g = lstm_cell_backward(p, cache, dh_total, dc, grads);
    dx_next = std::move(g.dx);
    dh = std::move(g.dh_prev);
    dc = std::move(g.dc_prev);
  }
  if (gen.options.learned_start) colsum_acc(dx_next, grads.x0);

  NoiseGrads out;
  if (gen.options.noise_target == NoiseTarget::hidden_only) {
    colsum_acc(dc, grads.c0);
  } else {
    out.dz_c = std::move(dc);
  }
  out.dz_h = std::move(dh);
  return out;
}

Discriminator Discriminator::zeros(std::size_t hidden) {
  return {LstmParams::zeros(kVocabSize, hidden, 1)};
}

Discriminator Discriminator::random(std::size_t hidden, Rng& rng, double init_scale,
                                    double forget_bias) {
  return {LstmParams::random(kVocabSize, hidden, 1, rng, init_scale, forget_bias)};
}

DiscForward discriminate_forward(const Discriminator& disc, const SequenceBatch& seq) {
  const LstmParams& p = disc.params;
  if (seq.length() == 0) throw ShapeError("discriminate: empty sequence");
  LstmState state = LstmState::zeros(seq.batch(), p.hidden_size);
  DiscForward out;
  out.caches.reserve(seq.length());
  for (const Matrix& x : seq.steps) {
    StepCache cache = lstm_cell_forward(p, state, x);
    state = {cache.c, cache.h};
    out.caches.push_back(std::move(cache));
  }
  out.logit = readout_forward(p, state.h);
  out.prob = apply(Unary::sigmoid, out.logit);
  return out;
}

Matrix discriminate(const Discriminator& disc, const SequenceBatch& seq) {
  return discriminate_forward(disc, seq).prob;
}

std::vector<Matrix> discriminate_backward(const Discriminator& disc, const DiscForward& fwd,
                                          const Matrix& dlogit, LstmParams* grads) {
  const LstmParams& p = disc.params;
  require_same_shape(fwd.logit, dlogit, "discriminate_backward");
  LstmParams scratch;
  if (grads == nullptr) {
    scratch = p.zeros_like();
    grads = &scratch;
  }
  Matrix dh = readout_backward(p, fwd.caches.back().h, dlogit, *grads);
  Matrix dc(dh.rows(), dh.cols());
  std::vector<Matrix> dx(fwd.caches.size());
  for (std::size_t t = fwd.caches.size(); t-- > 0;) {
    CellInputGrads g = lstm_cell_backward(p, fwd.caches[t], dh, dc, *grads);
    dx[t] = std::move(g.dx);
    dh = std::move(g.dh_prev);
    dc = std::move(g.dc_prev);
  }
  return dx;
}

LanguageModel LanguageModel::zeros(std::size_t hidden) {
  return {LstmParams::zeros(kVocabSize, hidden, kVocabSize)};
}

LanguageModel LanguageModel::random(std::size_t hidden, Rng& rng, double init_scale,
                                    double forget_bias) {
  return {LstmParams::random(kVocabSize, hidden, kVocabSize, rng, init_scale, forget_bias)};
}

namespace {

struct MlePass {
  double nll = 0.0;
  std::vector<StepCache> caches;
  std::vector<Matrix> probs;
};

MlePass mle_pass(const LstmParams& p, const SequenceBatch& seq) {
  if (seq.length() < 2) throw ShapeError("mle_forward: sequences need at least two steps");
  const std::size_t predicted = seq.length() - 1;
  MlePass pass;
  pass.caches.reserve(predicted);
  pass.probs.reserve(predicted);
  LstmState state = LstmState::zeros(seq.batch(), p.hidden_size);
  for (std::size_t t = 0; t < predicted; ++t) {
    StepCache cache = lstm_cell_forward(p, state, seq.steps[t]);
    Matrix probs = softmax_rows(readout_forward(p, cache.h));
    pass.nll += cross_entropy(probs, seq.steps[t + 1]);
    state = {cache.c, cache.h};
    pass.caches.push_back(std::move(cache));
    pass.probs.push_back(std::move(probs));
  }
  pass.nll /= static_cast<double>(predicted);
  return pass;
}

}  // namespace

double mle_forward(const LanguageModel& model, const SequenceBatch& seq) {
  return mle_pass(model.params, seq).nll;
}

double mle_loss_and_grad(const LanguageModel& model, const SequenceBatch& seq, LstmParams& grads) {
  const LstmParams& p = model.params;
  MlePass pass = mle_pass(p, seq);
  const std::size_t predicted = pass.caches.size();
  const double step_weight = 1.0 / static_cast<double>(predicted);

  Matrix dh(seq.batch(), p.hidden_size);
  Matrix dc(seq.batch(), p.hidden_size);
  for (std::size_t t = predicted; t-- > 0;) {
    const Matrix dlogits =
        scale(softmax_cross_entropy_backward(pass.probs[t], seq.steps[t + 1]), step_weight);
    CellInputGrads g = lstm_step_backward(p, pass.caches[t], dlogits, dh, dc, grads);
    dh = std::move(g.dh_prev);
    dc = std::move(g.dc_prev);
  }
  return pass.nll;
}

std::vector<std::string> sample_mle_batch(const LanguageModel& model, std::size_t n,
                                          std::size_t steps, Rng& rng, std::size_t seed_char) {
  const LstmParams& p = model.params;
  if (seed_char >= kVocabSize) throw DomainError("sample_mle: seed character out of range");
  std::vector<std::string> out(n, std::string(1, Vocabulary::symbol(seed_char)));
  if (n == 0 || steps == 0) {
    if (steps == 0) out.assign(n, std::string());
    return out;
  }
  LstmState state = LstmState::zeros(n, p.hidden_size);
  Matrix x(n, kVocabSize);
  for (std::size_t b = 0; b < n; ++b) x(b, seed_char) = 1.0;
  for (std::size_t t = 1; t < steps; ++t) {
    StepOutput step = lstm_step(p, state, x);
    x.set_zero();
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t idx = gumbel_max_sample(step.logits.row(b), rng);
      x(b, idx) = 1.0;
      out[b].push_back(Vocabulary::symbol(idx));
    }
    state = std::move(step.state);
  }
  return out;
}

std::string sample_mle(const LanguageModel& model, std::size_t steps, Rng& rng,
                       std::size_t seed_char) {
  return sample_mle_batch(model, 1, steps, rng, seed_char).front();
}

}  // namespace ggan
