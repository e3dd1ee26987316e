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

#include "ggan/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "ggan/checkpoint.hpp"
#include "ggan/errors.hpp"
#include "ggan/evaluation.hpp"
#include "ggan/grammar.hpp"
#include "ggan/losses.hpp"

namespace ggan {
namespace {

using Clock = std::chrono::steady_clock;

std::string optional_cell(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::ofstream open_log(const std::filesystem::path& path, const std::string& header) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open log '" + path.string() + "'");
  out << header << '\n';
  return out;
}

void prepare_out_dir(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
}

bool every(std::size_t t, std::size_t period, std::size_t last) {
  return t == last || (period > 0 && t % period == 0);
}

std::vector<std::string> pick_batch(std::span<const std::string> dataset, std::size_t m, Rng& rng) {
  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(dataset[rng.below(dataset.size())]);
  return out;
}

void require_dataset(std::span<const std::string> dataset) {
  if (dataset.empty()) throw DomainError("training needs a nonempty dataset");
  for (const auto& line : dataset) {
    if (line.size() != dataset.front().size()) throw InputError("dataset lines differ in length");
  }
}

double check_finite(double v, const char* what, std::size_t iteration) {
  if (!std::isfinite(v)) {
    throw TrainingAborted(fmt::format("non-finite {} at iteration {}", what, iteration));
  }
  return v;
}

}  // namespace

std::string gan_csv_header() { return "iteration,d_loss,g_loss,tau,validity_rate,wall_ms"; }

std::string to_csv_row(const TrainLogRecord& r) {
  return fmt::format("{},{},{},{},{},{}", r.iteration, r.d_loss, r.g_loss, r.tau,
                     optional_cell(r.validity_rate), optional_cell(r.wall_ms));
}

std::string mle_csv_header() { return "iteration,nll,validity_rate,wall_ms"; }

std::string to_csv_row(const MleLogRecord& r) {
  return fmt::format("{},{},{},{}", r.iteration, r.nll, optional_cell(r.validity_rate),
                     optional_cell(r.wall_ms));
}

GanStreams GanStreams::from_seed(std::uint64_t seed) {
  return {stream_rng(seed, Stream::batch), stream_rng(seed, Stream::noise),
          stream_rng(seed, Stream::gumbel)};
}

GanState init_gan(const GanConfig& config) {
  config.validate();
  Rng init = stream_rng(config.seed, Stream::init);
  GanState s{Generator::random(config.hidden_size, init, config.generator_options(),
                               config.init_scale, config.forget_bias),
             Discriminator::random(config.hidden_size, init, config.init_scale, config.forget_bias),
             {},
             {}};
  s.gen_opt = AdamState::for_params(s.gen.params);
  s.disc_opt = AdamState::for_params(s.disc.params);
  return s;
}

IterationLosses gan_iteration(GanState& state, const GanConfig& config,
                              std::span<const std::string> dataset, std::size_t iteration,
                              GanStreams& streams, const GanPhaseHook& hook) {
  IterationLosses out;
  out.tau = tau_at(config.schedule, iteration);
  const double gen_tau = config.anneal_target == AnnealTarget::inputs_only ? 1.0 : out.tau;
  const std::size_t k = config.gen_sample_size;

  // Discriminator step.
  const auto real_lines = pick_batch(dataset, config.batch_size, streams.batch);
  const SequenceBatch real =
      smooth_inputs(encode_one_hot(real_lines), config.input_target_prob, out.tau, streams.gumbel);
  {
    const NoisePair z = sample_noise(state.gen, k, streams.noise);
    const GenSample fake = generate(state.gen, z.z_c, z.z_h, gen_tau, streams.gumbel);
    const DiscForward on_real = discriminate_forward(state.disc, real);
    const DiscForward on_fake = discriminate_forward(state.disc, fake.soft);
    out.d_loss = check_finite(d_loss(on_real.prob, on_fake.prob).value, "discriminator loss", iteration);

    LstmParams grads = state.disc.params.zeros_like();
    discriminate_backward(state.disc, on_real, d_loss_real_logit_grad(on_real.prob), &grads);
    discriminate_backward(state.disc, on_fake, d_loss_fake_logit_grad(on_fake.prob), &grads);
    adam_update(state.disc.params, grads, state.disc_opt, config.learning_rate);
  }
  if (hook) hook(iteration, GanPhase::discriminator_updated, state);

  // Generator step against the updated discriminator.
  {
    const NoisePair z = sample_noise(state.gen, k, streams.noise);
    const GenSample fake = generate(state.gen, z.z_c, z.z_h, gen_tau, streams.gumbel);
    const DiscForward on_fake = discriminate_forward(state.disc, fake.soft);
    out.g_loss = check_finite(g_loss(on_fake.prob).value, "generator loss", iteration);

    const std::vector<Matrix> dsoft =
        discriminate_backward(state.disc, on_fake, g_loss_logit_grad(on_fake.prob), nullptr);
    LstmParams grads = state.gen.params.zeros_like();
    generate_backward(state.gen, fake, dsoft, grads);
    adam_update(state.gen.params, grads, state.gen_opt, config.learning_rate);
  }
  if (hook) hook(iteration, GanPhase::generator_updated, state);
  return out;
}

GanRunResult train_gan(const GanConfig& config, std::span<const std::string> dataset,
                       const std::filesystem::path& out_dir, const GanPhaseHook& hook) {
  config.validate();
  require_dataset(dataset);
  prepare_out_dir(out_dir);

  GanRunResult result;
  result.state = init_gan(config);
  result.csv_path = out_dir / "losses.csv";
  GanStreams streams = GanStreams::from_seed(config.seed);
  const nlohmann::json config_echo = config;

  auto measure_validity = [&](const Generator& gen) {
    Rng eval = stream_rng(config.seed, Stream::eval);
    return evaluate_validity(gen, config.eval_samples, eval);
  };
  auto checkpoint = [&](std::size_t iteration) {
    Checkpoint ckpt;
    ckpt.mode = CheckpointMode::gan;
    ckpt.iteration = iteration;
    ckpt.seed = config.seed;
    ckpt.config = config_echo;
    ckpt.generator = result.state.gen;
    ckpt.discriminator = result.state.disc;
    save_checkpoint(out_dir / fmt::format("ckpt_{}", iteration), ckpt);
  };

  result.initial_validity = measure_validity(result.state.gen);
  result.final_validity = result.initial_validity;
  std::ofstream csv = open_log(result.csv_path, gan_csv_header());
  const auto start = Clock::now();
  spdlog::info("gan: {} iterations, m={}, k={}, H={}, initial validity {:.3f}", config.total_iters,
               config.batch_size, config.gen_sample_size, config.hidden_size,
               result.initial_validity);

  for (std::size_t t = 1; t <= config.total_iters; ++t) {
    const IterationLosses losses = gan_iteration(result.state, config, dataset, t, streams, hook);
    TrainLogRecord rec{t, losses.d_loss, losses.g_loss, losses.tau, std::nullopt, std::nullopt};
    if (every(t, config.eval_every, config.total_iters)) {
      rec.validity_rate = measure_validity(result.state.gen);
      result.final_validity = *rec.validity_rate;
      spdlog::info("gan: iter {} d_loss {:.4f} g_loss {:.4f} tau {:.3f} validity {:.3f}", t,
                   rec.d_loss, rec.g_loss, rec.tau, *rec.validity_rate);
    }
    if (config.log_wall_time) {
      rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    csv << to_csv_row(rec) << '\n';
    csv.flush();
    result.log.push_back(rec);
    if (every(t, config.checkpoint_every, config.total_iters)) checkpoint(t);
    result.iterations = t;
  }
  return result;
}

MleRunResult train_mle(const MleConfig& config, std::span<const std::string> dataset,
                       const std::filesystem::path& out_dir) {
  config.validate();
  require_dataset(dataset);
  if (dataset.size() < 2) throw DomainError("train_mle needs at least two sequences for a held-out split");
  prepare_out_dir(out_dir);

  MleRunResult result;
  Rng init = stream_rng(config.seed, Stream::init);
  result.model = LanguageModel::random(config.hidden_size, init, config.init_scale, config.forget_bias);
  AdamState opt = AdamState::for_params(result.model.params);
  const nlohmann::json config_echo = config;

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng data_rng = stream_rng(config.seed, Stream::data);
  std::shuffle(order.begin(), order.end(), data_rng);
  const auto heldout_n = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(config.holdout_fraction * static_cast<double>(dataset.size()))),
      1, dataset.size() - 1);
  std::vector<std::string> heldout, train;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < heldout_n ? heldout : train).push_back(dataset[order[i]]);
  }
  result.train_size = train.size();
  result.heldout_size = heldout.size();
  const SequenceBatch heldout_batch = encode_one_hot(heldout);

  auto measure_validity = [&](const LanguageModel& model) {
    Rng eval = stream_rng(config.seed, Stream::eval);
    return evaluate_validity(model, config.eval_samples, eval);
  };
  auto checkpoint = [&](std::size_t iteration) {
    Checkpoint ckpt;
    ckpt.mode = CheckpointMode::mle;
    ckpt.iteration = iteration;
    ckpt.seed = config.seed;
    ckpt.config = config_echo;
    ckpt.language_model = result.model;
    save_checkpoint(out_dir / fmt::format("ckpt_{}", iteration), ckpt);
  };

  result.initial_heldout_nll = mle_forward(result.model, heldout_batch);
  result.initial_validity = measure_validity(result.model);
  result.final_validity = result.initial_validity;
  result.csv_path = out_dir / "nll.csv";
  std::ofstream csv = open_log(result.csv_path, mle_csv_header());
  const auto start = Clock::now();
  spdlog::info("mle: {} iterations, m={}, H={}, train {} / held-out {}", config.total_iters,
               config.batch_size, config.hidden_size, train.size(), heldout.size());

  // Shuffled passes over the training split, reshuffling at each pass boundary.
  Rng batch_rng = stream_rng(config.seed, Stream::batch);
  std::vector<std::size_t> perm(train.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), batch_rng);
  std::size_t cursor = 0;
  std::vector<std::string> lines(config.batch_size);

  for (std::size_t t = 1; t <= config.total_iters; ++t) {
    for (auto& line : lines) {
      if (cursor == perm.size()) {
        std::shuffle(perm.begin(), perm.end(), batch_rng);
        cursor = 0;
      }
      line = train[perm[cursor++]];
    }
    LstmParams grads = result.model.params.zeros_like();
    const double nll =
        check_finite(mle_loss_and_grad(result.model, encode_one_hot(lines), grads), "NLL", t);
    adam_update(result.model.params, grads, opt, config.learning_rate);

    MleLogRecord rec{t, nll, std::nullopt, std::nullopt};
    if (every(t, config.eval_every, config.total_iters)) {
      rec.validity_rate = measure_validity(result.model);
      result.final_validity = *rec.validity_rate;
      spdlog::info("mle: iter {} nll {:.4f} validity {:.3f}", t, nll, *rec.validity_rate);
    }
    if (config.log_wall_time) {
      rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    csv << to_csv_row(rec) << '\n';
    csv.flush();
    result.log.push_back(rec);
    if (every(t, config.checkpoint_every, config.total_iters)) checkpoint(t);
    result.iterations = t;
  }
  result.heldout_nll = mle_forward(result.model, heldout_batch);
  spdlog::info("mle: held-out NLL {:.4f} (untrained {:.4f})", result.heldout_nll,
               result.initial_heldout_nll);
  return result;
}

}  // namespace ggan
