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

#include "ggan/config.hpp"

#include "ggan/errors.hpp"

namespace ggan {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("config: ") + what);
}

}  // namespace

void GanConfig::validate() const {
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(batch_size > 0, "batch_size must be positive");
  require(total_iters > 0, "total_iters must be positive");
  require(gen_sample_size > 0, "gen_sample_size must be positive");
  require(hidden_size > 0, "hidden_size must be positive");
  require(input_target_prob > 0.0 && input_target_prob < 1.0, "input_target_prob must lie in (0,1)");
  require(schedule.total_iters == total_iters, "schedule.total_iters must equal total_iters");
  require(eval_samples > 0, "eval_samples must be positive");
  require(init_scale >= 0.0, "init_scale must be non-negative");
  schedule.validate();
}

GanConfig gan_variant(char variant) {
  GanConfig c;
  switch (variant) {
    case 'a':
      break;
    case 'b':
      c.gen_sample_size = 1000;
      break;
    case 'c':
      c.anneal_target = AnnealTarget::inputs_only;
      break;
    case 'd':
      c.noise_target = NoiseTarget::hidden_only;
      break;
    default:
      throw DomainError(std::string("unknown experiment variant '") + variant + "' (expected a-d)");
  }
  return c;
}

void MleConfig::validate() const {
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(batch_size > 0, "batch_size must be positive");
  require(total_iters > 0, "total_iters must be positive");
  require(hidden_size > 0, "hidden_size must be positive");
  require(holdout_fraction > 0.0 && holdout_fraction < 1.0, "holdout_fraction must lie in (0,1)");
  require(eval_samples > 0, "eval_samples must be positive");
}

std::string_view to_string(AnnealTarget t) noexcept {
  return t == AnnealTarget::inputs_only ? "inputs-only" : "generator+inputs";
}

std::string_view to_string(NoiseTarget t) noexcept {
  return t == NoiseTarget::hidden_only ? "hidden-only" : "both";
}

AnnealTarget parse_anneal_target(std::string_view s) {
  if (s == "generator+inputs") return AnnealTarget::generator_and_inputs;
  if (s == "inputs-only") return AnnealTarget::inputs_only;
  throw DomainError("unknown anneal target '" + std::string(s) + "'");
}

NoiseTarget parse_noise_target(std::string_view s) {
  if (s == "both") return NoiseTarget::both;
  if (s == "hidden-only") return NoiseTarget::hidden_only;
  throw DomainError("unknown noise target '" + std::string(s) + "'");
}

void to_json(nlohmann::json& j, const AnnealSchedule& s) {
  j = {{"tau_start", s.tau_start},
       {"tau_end", s.tau_end},
       {"anneal_iters", s.anneal_iters},
       {"total_iters", s.total_iters}};
}

void from_json(const nlohmann::json& j, AnnealSchedule& s) {
  j.at("tau_start").get_to(s.tau_start);
  j.at("tau_end").get_to(s.tau_end);
  j.at("anneal_iters").get_to(s.anneal_iters);
  j.at("total_iters").get_to(s.total_iters);
}

void to_json(nlohmann::json& j, const GanConfig& c) {
  j = {{"mode", "gan"},
       {"learning_rate", c.learning_rate},
       {"batch_size", c.batch_size},
       {"total_iters", c.total_iters},
       {"schedule", c.schedule},
       {"input_target_prob", c.input_target_prob},
       {"gen_sample_size", c.gen_sample_size},
       {"anneal_target", to_string(c.anneal_target)},
       {"noise_target", to_string(c.noise_target)},
       {"learned_start", c.learned_start},
       {"hidden_size", c.hidden_size},
       {"seed", c.seed},
       {"init_scale", c.init_scale},
       {"forget_bias", c.forget_bias},
       {"eval_every", c.eval_every},
       {"eval_samples", c.eval_samples},
       {"checkpoint_every", c.checkpoint_every},
       {"log_wall_time", c.log_wall_time}};
}

void from_json(const nlohmann::json& j, GanConfig& c) {
  j.at("learning_rate").get_to(c.learning_rate);
  j.at("batch_size").get_to(c.batch_size);
  j.at("total_iters").get_to(c.total_iters);
  j.at("schedule").get_to(c.schedule);
  j.at("input_target_prob").get_to(c.input_target_prob);
  j.at("gen_sample_size").get_to(c.gen_sample_size);
  c.anneal_target = parse_anneal_target(j.at("anneal_target").get<std::string>());
  c.noise_target = parse_noise_target(j.at("noise_target").get<std::string>());
  j.at("learned_start").get_to(c.learned_start);
  j.at("hidden_size").get_to(c.hidden_size);
  j.at("seed").get_to(c.seed);
  j.at("init_scale").get_to(c.init_scale);
  j.at("forget_bias").get_to(c.forget_bias);
  j.at("eval_every").get_to(c.eval_every);
  j.at("eval_samples").get_to(c.eval_samples);
  j.at("checkpoint_every").get_to(c.checkpoint_every);
  j.at("log_wall_time").get_to(c.log_wall_time);
}

void to_json(nlohmann::json& j, const MleConfig& c) {
  j = {{"mode", "mle"},
       {"learning_rate", c.learning_rate},
       {"batch_size", c.batch_size},
       {"total_iters", c.total_iters},
       {"hidden_size", c.hidden_size},
       {"holdout_fraction", c.holdout_fraction},
       {"seed", c.seed},
       {"init_scale", c.init_scale},
       {"forget_bias", c.forget_bias},
       {"eval_every", c.eval_every},
       {"eval_samples", c.eval_samples},
       {"checkpoint_every", c.checkpoint_every},
       {"log_wall_time", c.log_wall_time}};
}

void from_json(const nlohmann::json& j, MleConfig& c) {
  j.at("learning_rate").get_to(c.learning_rate);
  j.at("batch_size").get_to(c.batch_size);
  j.at("total_iters").get_to(c.total_iters);
  j.at("hidden_size").get_to(c.hidden_size);
  j.at("holdout_fraction").get_to(c.holdout_fraction);
  j.at("seed").get_to(c.seed);
  j.at("init_scale").get_to(c.init_scale);
  j.at("forget_bias").get_to(c.forget_bias);
  j.at("eval_every").get_to(c.eval_every);
  j.at("eval_samples").get_to(c.eval_samples);
  j.at("checkpoint_every").get_to(c.checkpoint_every);
  j.at("log_wall_time").get_to(c.log_wall_time);
}

}  // namespace ggan
