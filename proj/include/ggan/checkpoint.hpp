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
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ggan/lstm.hpp"
#include "ggan/network.hpp"

// Checkpoints are JSON documents:
//
//   {"format": "ggan-checkpoint", "version": 1, "mode": "gan"|"mle",
//    "iteration": N, "seed": S, "config": {...},
//    "networks": {"generator": NET, "discriminator": NET} | {"mle": NET}}
//
// where NET = {"input_size", "hidden_size", "output_size", "params": {name: {"rows",
// "cols", "data": [...]}}} and a generator NET also carries "noise_target" and
// "learned_start". Doubles are written in shortest round-trip form, so loading
// reproduces every value bit for bit.
namespace ggan {

enum class CheckpointMode { gan, mle };

struct Checkpoint {
  CheckpointMode mode = CheckpointMode::gan;
  std::size_t iteration = 0;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::optional<Generator> generator;
  std::optional<Discriminator> discriminator;
  std::optional<LanguageModel> language_model;
};

nlohmann::json params_to_json(const LstmParams& params);
LstmParams params_from_json(const nlohmann::json& j);

nlohmann::json checkpoint_to_json(const Checkpoint& ckpt);
// Throws InputError naming the offending field.
Checkpoint checkpoint_from_json(const nlohmann::json& j);

// Writes to a temporary sibling and renames, so a crash never leaves a torn file.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ggan
