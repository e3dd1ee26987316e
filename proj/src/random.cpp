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

#include "ggan/random.hpp"

#include <cmath>
#include <string>

#include "ggan/errors.hpp"
#include "ggan/numeric.hpp"

namespace ggan {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("temperature must be positive and finite, got " + std::to_string(tau));
  }
}

}  // namespace

Rng stream_rng(std::uint64_t master_seed, Stream stream) {
  return Rng(splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(stream))));
}

void AnnealSchedule::validate() const {
  if (!(tau_end > 0.0) || !(tau_start >= tau_end)) {
    throw DomainError("anneal schedule needs tau_start >= tau_end > 0 (got " +
                      std::to_string(tau_start) + " -> " + std::to_string(tau_end) + ")");
  }
}

double tau_at(const AnnealSchedule& schedule, std::size_t iter) {
  if (schedule.anneal_iters == 0 || iter >= schedule.anneal_iters) return schedule.tau_end;
  const double frac = static_cast<double>(iter) / static_cast<double>(schedule.anneal_iters);
  return schedule.tau_start + (schedule.tau_end - schedule.tau_start) * frac;
}

double gumbel_from_uniform(double u) { return -std::log(-std::log(u)); }

Matrix uniform_noise(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform();
  return m;
}

Matrix gumbel_noise(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = gumbel_from_uniform(rng.uniform());
  return m;
}

std::size_t gumbel_max_sample(std::span<const double> logits, Rng& rng) {
  std::size_t best = 0;
  double best_score = -INFINITY;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double score = logits[i] + gumbel_from_uniform(rng.uniform());
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

std::size_t gumbel_max_sample(const Matrix& logits, Rng& rng) {
  if (logits.rows() != 1) {
    throw ShapeError("gumbel_max_sample expects a single row, got " + logits.shape_string());
  }
  return gumbel_max_sample(logits.row(0), rng);
}

Matrix gumbel_softmax_with_noise(const Matrix& logits, const Matrix& noise, double tau) {
  require_tau(tau);
  require_same_shape(logits, noise, "gumbel_softmax");
  Matrix z = add(logits, noise);
  return softmax_rows(scale(z, 1.0 / tau));
}

RelaxedSample gumbel_softmax_sample(const Matrix& logits, double tau, Rng& rng) {
  require_tau(tau);
  RelaxedSample out;
  out.noise = gumbel_noise(rng, logits.rows(), logits.cols());
  out.y = gumbel_softmax_with_noise(logits, out.noise, tau);
  return out;
}

Matrix gumbel_softmax_backward(const Matrix& y, const Matrix& dy, double tau) {
  require_tau(tau);
  return scale(softmax_rows_backward(y, dy), 1.0 / tau);
}

}  // namespace ggan
