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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ggan/checkpoint.hpp"
#include "ggan/config.hpp"
#include "ggan/errors.hpp"
#include "ggan/evaluation.hpp"
#include "ggan/grammar.hpp"
#include "ggan/training.hpp"
#include "manifest.hpp"

namespace ggan::cli {
namespace fs = std::filesystem;

namespace {

const CLI::Range kAtLeastOne(std::size_t{1}, std::numeric_limits<std::size_t>::max(), "POSITIVE");

// Thrown for invalid combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenDataArgs {
  std::size_t n = 5000;
  std::size_t max_len = kSeqLen;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

struct TrainArgs {
  std::string mode = "gan";
  std::string variant = "a";
  std::string data;
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> iters, batch_size, hidden, gen_samples, anneal_iters, eval_every,
      eval_samples, checkpoint_every;
  std::optional<double> lr, tau_start, tau_end, input_prob, holdout;
  std::optional<std::string> anneal_target, noise_target;
  bool learned_start = false;
  bool log_wall_time = false;
};

struct SampleArgs {
  std::string ckpt;
  std::size_t n = 20;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "text";
};

struct EvalArgs {
  std::string ckpt;
  std::size_t n = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string data;
};

int cmd_gen_data(const GenDataArgs& a, std::ostream& out) {
  Rng rng = stream_rng(a.seed, Stream::data);
  const auto lines = make_dataset(Grammar{}, a.n, a.max_len, rng);
  write_dataset(a.out, lines);

  std::map<std::size_t, std::size_t> lengths;
  for (const auto& l : lines) ++lengths[valid_prefix_length(l)];
  out << fmt::format("wrote {} samples of {} characters to {}\n", lines.size(), a.max_len, a.out);
  out << "length histogram:\n";
  for (const auto& [len, count] : lengths) out << fmt::format("  {:>2}: {}\n", len, count);
  out << fmt::format("validity: {:.1f}%\n", 100.0 * validity_rate(lines));
  return kExitOk;
}

GanConfig gan_config_from(const TrainArgs& a) {
  GanConfig c = gan_variant(a.variant.at(0));
  c.seed = a.seed;
  if (a.iters) c.total_iters = c.schedule.total_iters = *a.iters;
  if (a.batch_size) {
    // The fake batch follows m unless the preset or a flag says otherwise.
    if (c.gen_sample_size == c.batch_size) c.gen_sample_size = *a.batch_size;
    c.batch_size = *a.batch_size;
  }
  if (a.hidden) c.hidden_size = *a.hidden;
  if (a.gen_samples) c.gen_sample_size = *a.gen_samples;
  if (a.anneal_iters) c.schedule.anneal_iters = *a.anneal_iters;
  if (a.eval_every) c.eval_every = *a.eval_every;
  if (a.eval_samples) c.eval_samples = *a.eval_samples;
  if (a.checkpoint_every) c.checkpoint_every = *a.checkpoint_every;
  if (a.lr) c.learning_rate = *a.lr;
  if (a.tau_start) c.schedule.tau_start = *a.tau_start;
  if (a.tau_end) c.schedule.tau_end = *a.tau_end;
  if (a.input_prob) c.input_target_prob = *a.input_prob;
  if (a.anneal_target) c.anneal_target = parse_anneal_target(*a.anneal_target);
  if (a.noise_target) c.noise_target = parse_noise_target(*a.noise_target);
  if (a.learned_start) c.learned_start = true;
  c.log_wall_time = a.log_wall_time;
  return c;
}

MleConfig mle_config_from(const TrainArgs& a) {
  MleConfig c;
  c.seed = a.seed;
  if (a.iters) c.total_iters = *a.iters;
  if (a.batch_size) c.batch_size = *a.batch_size;
  if (a.hidden) c.hidden_size = *a.hidden;
  if (a.lr) c.learning_rate = *a.lr;
  if (a.holdout) c.holdout_fraction = *a.holdout;
  if (a.eval_every) c.eval_every = *a.eval_every;
  if (a.eval_samples) c.eval_samples = *a.eval_samples;
  if (a.checkpoint_every) c.checkpoint_every = *a.checkpoint_every;
  c.log_wall_time = a.log_wall_time;
  return c;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  RunManifest manifest;
  manifest.seed = a.seed;
  std::optional<GanConfig> gan;
  std::optional<MleConfig> mle;
  try {
    if (a.mode == "gan") {
      gan = gan_config_from(a);
      gan->validate();
      manifest.config = *gan;
      manifest.config["variant"] = a.variant;
    } else {
      mle = mle_config_from(a);
      mle->validate();
      manifest.config = *mle;
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const auto dataset = read_dataset(a.data);
  const fs::path out_dir = a.out;
  fs::create_directories(out_dir);
  manifest.dataset_path = fs::absolute(a.data).string();
  manifest.dataset_sha256 = sha256_file(a.data);
  manifest.started_at = utc_now();
  manifest.write(out_dir);

  if (gan) {
    const GanRunResult r = train_gan(*gan, dataset, out_dir);
    manifest.results = {{"iterations", r.iterations},
                        {"initial_validity", r.initial_validity},
                        {"final_validity", r.final_validity},
                        {"log", r.csv_path.filename().string()}};
    out << fmt::format("gan training finished: {} iterations, validity {:.3f} -> {:.3f}\n",
                       r.iterations, r.initial_validity, r.final_validity);
  } else {
    const MleRunResult r = train_mle(*mle, dataset, out_dir);
    manifest.results = {{"iterations", r.iterations},
                        {"initial_heldout_nll", r.initial_heldout_nll},
                        {"heldout_nll", r.heldout_nll},
                        {"initial_validity", r.initial_validity},
                        {"final_validity", r.final_validity},
                        {"log", r.csv_path.filename().string()}};
    out << fmt::format("mle training finished: {} iterations, held-out NLL {:.4f}, validity {:.3f}\n",
                       r.iterations, r.heldout_nll, r.final_validity);
  }
  manifest.finished_at = utc_now();
  manifest.write(out_dir);
  return kExitOk;
}

std::vector<std::string> sample_checkpoint(const Checkpoint& ckpt, std::size_t n, std::uint64_t seed) {
  Rng rng = stream_rng(seed, Stream::sample);
  if (ckpt.mode == CheckpointMode::gan) return sample_generator_text(*ckpt.generator, n, rng);
  return sample_mle_batch(*ckpt.language_model, n, kSeqLen, rng);
}

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const Checkpoint ckpt = load_checkpoint(a.ckpt);
  const auto lines = sample_checkpoint(ckpt, a.n, a.seed);
  if (a.format == "csv") out << "sequence,valid\n";
  for (const auto& line : lines) {
    if (a.format == "csv") {
      out << line << ',' << (recognize(line) ? 1 : 0) << '\n';
    } else {
      out << line << '\n';
    }
  }
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Checkpoint ckpt = load_checkpoint(a.ckpt);
  const auto lines = sample_checkpoint(ckpt, a.n, a.seed);
  const ValidityReport report = validity_report(lines);

  std::string data_path = a.data;
  if (data_path.empty()) data_path = manifest_dataset_path(fs::path(a.ckpt).parent_path());
  std::optional<std::array<double, kVocabSize>> corpus;
  if (!data_path.empty() && fs::exists(data_path)) corpus = char_frequencies(read_dataset(data_path));

  out << fmt::format("samples: {}\n", report.samples);
  out << fmt::format("validity_rate: {:.6f}\n", report.validity_rate);
  out << "valid_prefix_length histogram:\n";
  for (std::size_t len = 0; len < report.prefix_histogram.size(); ++len) {
    if (report.prefix_histogram[len] > 0) {
      out << fmt::format("  {:>2}: {}\n", len, report.prefix_histogram[len]);
    }
  }
  out << (corpus ? "char  generated  corpus\n" : "char  generated\n");
  for (std::size_t i = 0; i < kVocabSize; ++i) {
    const char c = Vocabulary::symbol(i);
    const std::string label = c == ' ' ? "' '" : fmt::format(" {} ", c);
    if (corpus) {
      out << fmt::format("{:<5} {:>9.6f}  {:>6.6f}\n", label, report.char_freq[i], (*corpus)[i]);
    } else {
      out << fmt::format("{:<5} {:>9.6f}\n", label, report.char_freq[i]);
    }
  }
  return kExitOk;
}

}  // namespace

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("ggan");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S] [%l] %v");
  if (const char* level = std::getenv("GGAN_LOG_LEVEL"); level != nullptr && *level != '\0') {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gumbel-softmax GAN over arithmetic-expression character sequences", "ggan"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  GenDataArgs gen_args;
  auto* gen = app.add_subcommand("gen-data", "Sample a corpus from the expression grammar");
  gen->add_option("--n", gen_args.n, "Number of samples")->check(kAtLeastOne);
  gen->add_option("--max-len", gen_args.max_len, "Line length (expressions are space padded)")
      ->check(kAtLeastOne);
  gen->add_option("--seed", gen_args.seed, "Master seed");
  gen->add_option("--out", gen_args.out, "Output file")->required();

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a GAN or the MLE baseline");
  train->add_option("--mode", train_args.mode)->check(CLI::IsMember({"gan", "mle"}));
  train->add_option("--variant", train_args.variant, "Experiment preset a|b|c|d")
      ->check(CLI::IsMember({"a", "b", "c", "d"}));
  train->add_option("--data", train_args.data, "Dataset file")->required()->check(CLI::ExistingFile);
  train->add_option("--out", train_args.out, "Output directory")->required();
  train->add_option("--seed", train_args.seed, "Master seed");
  train->add_option("--iters", train_args.iters)->check(kAtLeastOne);
  train->add_option("--batch-size", train_args.batch_size)->check(kAtLeastOne);
  train->add_option("--hidden", train_args.hidden)->check(kAtLeastOne);
  train->add_option("--gen-samples", train_args.gen_samples)->check(kAtLeastOne);
  train->add_option("--lr", train_args.lr);
  train->add_option("--tau-start", train_args.tau_start);
  train->add_option("--tau-end", train_args.tau_end);
  train->add_option("--anneal-iters", train_args.anneal_iters);
  train->add_option("--input-prob", train_args.input_prob);
  train->add_option("--anneal-target", train_args.anneal_target)
      ->check(CLI::IsMember({"generator+inputs", "inputs-only"}));
  train->add_option("--noise-target", train_args.noise_target)
      ->check(CLI::IsMember({"both", "hidden-only"}));
  train->add_flag("--learned-start", train_args.learned_start);
  train->add_option("--holdout", train_args.holdout, "Held-out fraction (mle)");
  train->add_option("--eval-every", train_args.eval_every);
  train->add_option("--eval-samples", train_args.eval_samples)->check(kAtLeastOne);
  train->add_option("--checkpoint-every", train_args.checkpoint_every);
  train->add_flag("--log-wall-time", train_args.log_wall_time, "Fill the wall_ms log column");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Print generated sequences");
  sample->add_option("--ckpt", sample_args.ckpt)->required();
  sample->add_option("--n", sample_args.n)->check(kAtLeastOne);
  sample->add_option("--seed", sample_args.seed);
  sample->add_option("--format", sample_args.format)->check(CLI::IsMember({"text", "csv"}));

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Report grammar validity of generated sequences");
  eval->add_option("--ckpt", eval_args.ckpt)->required();
  eval->add_option("--n", eval_args.n)->check(kAtLeastOne);
  eval->add_option("--seed", eval_args.seed);
  eval->add_option("--data", eval_args.data, "Corpus for the frequency comparison");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ggan: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen_data(gen_args, out);
    if (*train) return cmd_train(train_args, out);
    if (*sample) return cmd_sample(sample_args, out);
    if (*eval) return cmd_eval(eval_args, out);
  } catch (const UsageError& e) {
    err << "ggan: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TrainingAborted& e) {
    err << "ggan: training aborted: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "ggan: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ggan::cli
