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
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ggan/network.hpp"
#include "ggan/random.hpp"

namespace ggan {

inline constexpr std::uint64_t kDefaultSeed = 20170131;
inline constexpr std::string_view kToolVersion = "0.1.0";

// Which samples follow the annealed temperature. With inputs_only the generator
// samples at a fixed tau = 1.
enum class AnnealTarget { generator_and_inputs, inputs_only };

struct GanConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 200;
  std::size_t total_iters = 20'000;
  AnnealSchedule schedule{};
  double input_target_prob = 0.9;
  std::size_t gen_sample_size = 200;
  AnnealTarget anneal_target = AnnealTarget::generator_and_inputs;
  NoiseTarget noise_target = NoiseTarget::both;
  bool learned_start = false;
  std::size_t hidden_size = 32;
  std::uint64_t seed = kDefaultSeed;

  double init_scale = 0.08;
  double forget_bias = 1.0;
  std::size_t eval_every = 500;
  std::size_t eval_samples = 200;
  std::size_t checkpoint_every = 500;
  // Fill the wall_ms column. Off by default so logs are byte-reproducible.
  bool log_wall_time = false;

  // Throws DomainError on any invalid field.
  void validate() const;
  GeneratorOptions generator_options() const { return {noise_target, learned_start}; }
};

// Presets for the four experiment variants: a = defaults, b = 1000 generated
// samples per batch, c = only the input temperature is annealed, d = noise enters
// the hidden state only and C0 is learned.
GanConfig gan_variant(char variant);

struct MleConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 200;
  std::size_t total_iters = 2'000;
  std::size_t hidden_size = 32;
  double holdout_fraction = 0.1;
  std::uint64_t seed = kDefaultSeed;

  double init_scale = 0.08;
  double forget_bias = 1.0;
  std::size_t eval_every = 500;
  std::size_t eval_samples = 200;
  std::size_t checkpoint_every = 500;
  bool log_wall_time = false;

  void validate() const;
};

std::string_view to_string(AnnealTarget t) noexcept;
std::string_view to_string(NoiseTarget t) noexcept;
AnnealTarget parse_anneal_target(std::string_view s);
NoiseTarget parse_noise_target(std::string_view s);

void to_json(nlohmann::json& j, const AnnealSchedule& s);
void from_json(const nlohmann::json& j, AnnealSchedule& s);
void to_json(nlohmann::json& j, const GanConfig& c);
void from_json(const nlohmann::json& j, GanConfig& c);
void to_json(nlohmann::json& j, const MleConfig& c);
void from_json(const nlohmann::json& j, MleConfig& c);

}  // namespace ggan
