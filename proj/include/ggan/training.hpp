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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ggan/adam.hpp"
#include "ggan/config.hpp"
#include "ggan/network.hpp"
#include "ggan/random.hpp"

namespace ggan {

struct TrainLogRecord {
  std::size_t iteration = 0;
  double d_loss = 0.0;
  double g_loss = 0.0;
  double tau = 0.0;
  std::optional<double> validity_rate;
  std::optional<double> wall_ms;
};

// Column order: iteration, d_loss, g_loss, tau, validity_rate, wall_ms. Optional
// columns are left empty when absent.
std::string gan_csv_header();
std::string to_csv_row(const TrainLogRecord& r);

struct GanState {
  Generator gen;
  Discriminator disc;
  AdamState gen_opt;
  AdamState disc_opt;
};

GanState init_gan(const GanConfig& config);

// Random streams consumed by the adversarial loop.
struct GanStreams {
  Rng batch;
  Rng noise;
  Rng gumbel;

  static GanStreams from_seed(std::uint64_t seed);
};

enum class GanPhase { discriminator_updated, generator_updated };

struct IterationLosses {
  double d_loss = 0.0;
  double g_loss = 0.0;
  double tau = 0.0;
};

// Called after each half-step of an iteration.
using GanPhaseHook = std::function<void(std::size_t iteration, GanPhase, const GanState&)>;

// One iteration of the adversarial loop: a discriminator step on a smoothed real
// batch and a fake batch, then a generator step against the updated
// discriminator on a fresh fake batch. Throws TrainingAborted on non-finite losses.
IterationLosses gan_iteration(GanState& state, const GanConfig& config,
                              std::span<const std::string> dataset, std::size_t iteration,
                              GanStreams& streams, const GanPhaseHook& hook = {});

struct GanRunResult {
  std::size_t iterations = 0;
  double initial_validity = 0.0;
  double final_validity = 0.0;
  std::vector<TrainLogRecord> log;
  GanState state;
  std::filesystem::path csv_path;
};

// Full run: writes out_dir/losses.csv and out_dir/ckpt_<iter> checkpoints. Validity
// is measured on a fixed evaluation stream so values are comparable across
// iterations.
GanRunResult train_gan(const GanConfig& config, std::span<const std::string> dataset,
                       const std::filesystem::path& out_dir, const GanPhaseHook& hook = {});

struct MleLogRecord {
  std::size_t iteration = 0;
  double nll = 0.0;
  std::optional<double> validity_rate;
  std::optional<double> wall_ms;
};

std::string mle_csv_header();
std::string to_csv_row(const MleLogRecord& r);

struct MleRunResult {
  std::size_t iterations = 0;
  double initial_heldout_nll = 0.0;
  double heldout_nll = 0.0;
  double initial_validity = 0.0;
  double final_validity = 0.0;
  std::size_t train_size = 0;
  std::size_t heldout_size = 0;
  std::vector<MleLogRecord> log;
  LanguageModel model;
  std::filesystem::path csv_path;
};

// Teacher-forced maximum likelihood on clean one-hot sequences, with a held-out
// split for the final NLL. Writes out_dir/nll.csv and checkpoints.
MleRunResult train_mle(const MleConfig& config, std::span<const std::string> dataset,
                       const std::filesystem::path& out_dir);

}  // namespace ggan
