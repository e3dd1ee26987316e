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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace ggan::cli {

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// ISO-8601 UTC timestamp, second resolution.
std::string utc_now();

// out_dir/manifest.json: config echo, seed, dataset path and hash, tool version,
// timestamps. Written before training and rewritten with results afterwards.
struct RunManifest {
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string dataset_path;
  std::string dataset_sha256;
  std::string started_at;
  std::string finished_at;
  nlohmann::json results = nlohmann::json::object();

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& out_dir) const;
};

// Dataset path recorded in out_dir/manifest.json, or empty if there is none.
std::string manifest_dataset_path(const std::filesystem::path& out_dir);

}  // namespace ggan::cli
