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
#include <cstdint>
#include <random>
#include <span>

#include "ggan/matrix.hpp"

namespace ggan {

// Seedable 64-bit generator. Streams are reproducible within this implementation
// only.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1): 53 random bits mapped to bin centres,
  // so neither endpoint is reachable.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform index in [0, n).
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Independent streams derived from one master seed, one per concern, so an
// ablation that changes e.g. batch sizes does not perturb weight initialisation.
enum class Stream : std::uint64_t {
  data = 1,
  noise = 2,
  gumbel = 3,
  init = 4,
  batch = 5,
  eval = 6,
  sample = 7,
};

Rng stream_rng(std::uint64_t master_seed, Stream stream);

// Linear temperature anneal from tau_start at iteration 0 to tau_end at
// anneal_iters, flat afterwards.
struct AnnealSchedule {
  double tau_start = 5.0;
  double tau_end = 1.0;
  std::size_t anneal_iters = 10'000;
  std::size_t total_iters = 20'000;

  // Throws DomainError unless tau_start >= tau_end > 0.
  void validate() const;
};

double tau_at(const AnnealSchedule& schedule, std::size_t iter);

// g = -log(-log(u)).
double gumbel_from_uniform(double u);

Matrix uniform_noise(Rng& rng, std::size_t rows, std::size_t cols);
Matrix gumbel_noise(Rng& rng, std::size_t rows, std::size_t cols);

// argmax_i (h_i + g_i) with fresh Gumbel noise; ties go to the lowest index.
std::size_t gumbel_max_sample(std::span<const double> logits, Rng& rng);
std::size_t gumbel_max_sample(const Matrix& logits, Rng& rng);

struct RelaxedSample {
  Matrix y;      // softmax((h + g) / tau), row-stochastic
  Matrix noise;  // g, kept for replay and backward checks
};

// Rows are softmax((h + g) / tau) with fresh noise. Throws DomainError if tau <= 0.
RelaxedSample gumbel_softmax_sample(const Matrix& logits, double tau, Rng& rng);
// Same map with the noise supplied by the caller.
Matrix gumbel_softmax_with_noise(const Matrix& logits, const Matrix& noise, double tau);
// Gradient with respect to the logits given upstream dY, with the noise held fixed.
Matrix gumbel_softmax_backward(const Matrix& y, const Matrix& dy, double tau);

}  // namespace ggan
