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

#include "ggan/checkpoint.hpp"

#include <fstream>

#include "ggan/config.hpp"
#include "ggan/errors.hpp"

namespace ggan {

using nlohmann::json;

json params_to_json(const LstmParams& params) {
  json tensors = json::object();
  params.for_each([&tensors](std::string_view name, const Matrix& m) {
    tensors[std::string(name)] = {
        {"rows", m.rows()},
        {"cols", m.cols()},
        {"data", std::vector<double>(m.values().begin(), m.values().end())}};
  });
  return {{"input_size", params.input_size},
          {"hidden_size", params.hidden_size},
          {"output_size", params.output_size},
          {"params", std::move(tensors)}};
}

LstmParams params_from_json(const json& j) {
  LstmParams p;
  try {
    p.input_size = j.at("input_size").get<std::size_t>();
    p.hidden_size = j.at("hidden_size").get<std::size_t>();
    p.output_size = j.at("output_size").get<std::size_t>();
    const json& tensors = j.at("params");
    p.for_each([&tensors](std::string_view name, Matrix& m) {
      const json& t = tensors.at(std::string(name));
      m = Matrix(t.at("rows").get<std::size_t>(), t.at("cols").get<std::size_t>(),
                 t.at("data").get<std::vector<double>>());
    });
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint parameters: ") + e.what());
  } catch (const ShapeError& e) {
    throw InputError(std::string("checkpoint parameters: ") + e.what());
  }
  try {
    p.validate();
  } catch (const ShapeError& e) {
    throw InputError(std::string("checkpoint parameters: ") + e.what());
  }
  return p;
}

json checkpoint_to_json(const Checkpoint& ckpt) {
  json nets = json::object();
  if (ckpt.generator) {
    json g = params_to_json(ckpt.generator->params);
    g["noise_target"] = to_string(ckpt.generator->options.noise_target);
    g["learned_start"] = ckpt.generator->options.learned_start;
    nets["generator"] = std::move(g);
  }
  if (ckpt.discriminator) nets["discriminator"] = params_to_json(ckpt.discriminator->params);
  if (ckpt.language_model) nets["mle"] = params_to_json(ckpt.language_model->params);
  return {{"format", "ggan-checkpoint"},
          {"version", 1},
          {"mode", ckpt.mode == CheckpointMode::gan ? "gan" : "mle"},
          {"iteration", ckpt.iteration},
          {"seed", ckpt.seed},
          {"config", ckpt.config},
          {"networks", std::move(nets)}};
}

Checkpoint checkpoint_from_json(const json& j) {
  Checkpoint ckpt;
  try {
    if (j.at("format").get<std::string>() != "ggan-checkpoint") {
      throw InputError("checkpoint: unrecognised format tag");
    }
    if (j.at("version").get<int>() != 1) throw InputError("checkpoint: unsupported version");
    const auto mode = j.at("mode").get<std::string>();
    if (mode != "gan" && mode != "mle") throw InputError("checkpoint: unknown mode '" + mode + "'");
    ckpt.mode = mode == "gan" ? CheckpointMode::gan : CheckpointMode::mle;
    ckpt.iteration = j.at("iteration").get<std::size_t>();
    ckpt.seed = j.at("seed").get<std::uint64_t>();
    ckpt.config = j.at("config");
    const json& nets = j.at("networks");
    if (ckpt.mode == CheckpointMode::gan) {
      const json& g = nets.at("generator");
      GeneratorOptions opts;
      opts.noise_target = parse_noise_target(g.at("noise_target").get<std::string>());
      opts.learned_start = g.at("learned_start").get<bool>();
      ckpt.generator = Generator{params_from_json(g), opts};
      if (nets.contains("discriminator")) {
        ckpt.discriminator = Discriminator{params_from_json(nets.at("discriminator"))};
      }
    } else {
      ckpt.language_model = LanguageModel{params_from_json(nets.at("mle"))};
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint: ") + e.what());
  } catch (const DomainError& e) {
    throw InputError(std::string("checkpoint: ") + e.what());
  }
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const std::string text = checkpoint_to_json(ckpt).dump();
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint '" + tmp.string() + "'");
    out << text << '\n';
    if (!out) throw IoError("failed writing checkpoint '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace ggan
