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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ggan/adam.hpp"
#include "ggan/config.hpp"
#include "ggan/errors.hpp"
#include "ggan/evaluation.hpp"
#include "ggan/losses.hpp"
#include "ggan/training.hpp"
#include "test_support.hpp"

using namespace ggan;
using testing::random_matrix;

namespace {

Matrix column(std::initializer_list<double> v) {
  Matrix m(v.size(), 1);
  std::size_t i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

Matrix random_probs(Rng& rng, std::size_t n) {
  Matrix m(n, 1);
  for (double& v : m.values()) v = 0.05 + 0.9 * rng.uniform();
  return m;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GanConfig small_gan(std::size_t iters) {
  GanConfig c;
  c.hidden_size = 8;
  c.batch_size = 32;
  c.gen_sample_size = 32;
  c.total_iters = iters;
  c.schedule = AnnealSchedule{5.0, 1.0, iters / 2, iters};
  c.eval_every = 50;
  c.eval_samples = 50;
  c.checkpoint_every = 100;
  c.seed = 11;
  return c;
}

std::vector<std::string> corpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return make_dataset(Grammar{}, n, kSeqLen, rng);
}

}  // namespace

TEST_CASE("d_loss reference values") {
  CHECK(d_loss(column({0.5}), column({0.5})).value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(2.0 * std::log(2.0) == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK(d_loss(column({1.0}), column({0.0})).value < 1e-6);
  // Probabilities outside the clamp saturate but stay finite.
  const auto worst = d_loss(column({0.0}), column({1.0}));
  CHECK(std::isfinite(worst.value));
  CHECK(worst.value == doctest::Approx(-2.0 * std::log(kProbClamp)).epsilon(1e-9));
}

TEST_CASE("g_loss reference values") {
  CHECK(g_loss(column({0.5})).value == doctest::Approx(0.0).epsilon(1e-15));
  const double e = std::exp(1.0);
  CHECK(g_loss(column({e / (1.0 + e)})).value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::isfinite(g_loss(column({0.0, 1.0})).value));
}

TEST_CASE("loss gradients match finite differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Matrix real = random_probs(rng, 5);
    Matrix fake = random_probs(rng, 7);
    const DiscriminatorLoss dl = d_loss(real, fake);
    const std::vector<GradCheckParam> dps{{"real", &real, &dl.grad_real}, {"fake", &fake, &dl.grad_fake}};
    CHECK(grad_check([&] { return d_loss(real, fake).value; }, dps).max_rel_error < 1e-6);

    const GeneratorLoss gl = g_loss(fake);
    const std::vector<GradCheckParam> gps{{"fake", &fake, &gl.grad_fake}};
    CHECK(grad_check([&] { return g_loss(fake).value; }, gps).max_rel_error < 1e-6);
  }
}

TEST_CASE("logit-domain gradients equal the chained probability gradients") {
  Rng rng(21);
  const Matrix real = random_probs(rng, 6);
  const Matrix fake = random_probs(rng, 4);
  const DiscriminatorLoss dl = d_loss(real, fake);
  const GeneratorLoss gl = g_loss(fake);
  const Matrix gr = d_loss_real_logit_grad(real);
  const Matrix gf = d_loss_fake_logit_grad(fake);
  const Matrix gg = g_loss_logit_grad(fake);
  for (std::size_t i = 0; i < real.rows(); ++i) {
    const double p = real(i, 0);
    CHECK(gr(i, 0) == doctest::Approx(dl.grad_real(i, 0) * p * (1.0 - p)).epsilon(1e-12));
  }
  for (std::size_t i = 0; i < fake.rows(); ++i) {
    const double p = fake(i, 0);
    CHECK(gf(i, 0) == doctest::Approx(dl.grad_fake(i, 0) * p * (1.0 - p)).epsilon(1e-12));
    CHECK(gg(i, 0) == doctest::Approx(gl.grad_fake(i, 0) * p * (1.0 - p)).epsilon(1e-12));
    CHECK(gg(i, 0) == doctest::Approx(-1.0 / 4.0).epsilon(1e-15));
  }
}

TEST_CASE("Adam: zero gradient leaves parameters unchanged and decays moments") {
  Matrix theta = Matrix::from_rows({{1.0, -2.0}});
  Matrix grad = Matrix::from_rows({{1.0, 1.0}});
  const Matrix* shapes[] = {&theta};
  AdamState s = AdamState::for_shapes(shapes);
  const std::vector<AdamParam> ps{{"theta", &theta, &grad}};
  adam_update(ps, s, 0.1);
  const Matrix after_first = theta;
  const double m1 = s.m[0](0, 0);
  const double v1 = s.v[0](0, 0);
  grad.set_zero();
  adam_update(ps, s, 0.1);
  CHECK(s.t == 2);
  CHECK(s.m[0](0, 0) == doctest::Approx(0.9 * m1));
  CHECK(s.v[0](0, 0) == doctest::Approx(0.999 * v1));

  Matrix fresh = Matrix::from_rows({{3.0}});
  Matrix zero(1, 1);
  const Matrix* fs[] = {&fresh};
  AdamState z = AdamState::for_shapes(fs);
  const std::vector<AdamParam> zp{{"fresh", &fresh, &zero}};
  for (int i = 0; i < 10; ++i) adam_update(zp, z, 0.1);
  CHECK(fresh(0, 0) == 3.0);
  CHECK(after_first(0, 0) != 1.0);
}

TEST_CASE("Adam: first step with unit gradient moves by the learning rate") {
  Matrix theta = Matrix::from_rows({{0.5}});
  const Matrix grad = Matrix::from_rows({{1.0}});
  const Matrix* shapes[] = {&theta};
  AdamState s = AdamState::for_shapes(shapes);
  adam_update(std::vector<AdamParam>{{"theta", &theta, &grad}}, s, 0.001);
  CHECK(theta(0, 0) - 0.5 == doctest::Approx(-0.001 / (1.0 + 1e-8)).epsilon(1e-12));
}

// Adam on theta^2 for 50 steps from theta = 1; returns the
// trajectory.
static std::vector<double> adam_on_square(double lr) {
  Matrix theta = Matrix::from_rows({{1.0}});
  Matrix grad(1, 1);
  const Matrix* shapes[] = {&theta};
  AdamState s = AdamState::for_shapes(shapes);
  const std::vector<AdamParam> ps{{"theta", &theta, &grad}};
  std::vector<double> out;
  for (int i = 0; i < 50; ++i) {
    grad(0, 0) = 2.0 * theta(0, 0);
    adam_update(ps, s, lr);
    out.push_back(theta(0, 0));
  }
  return out;
}

TEST_CASE("Adam: minimises theta squared") {
  // lr = 0.01: |theta| falls at every one of the 50 steps.
  double prev = 1.0;
  for (double th : adam_on_square(0.01)) {
    REQUIRE(std::abs(th) < prev);
    prev = std::abs(th);
  }
  // lr = 0.1: steps of about lr carry theta past zero at step 12 (independent
  // reference: 0.9, 0.80041, ..., 0.00513, -0.05894), after which momentum
  // swings it back.
  const auto traj = adam_on_square(0.1);
  CHECK(traj[0] == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(traj[1] == doctest::Approx(0.80041).epsilon(1e-5));
  CHECK(traj[10] == doctest::Approx(0.00513).epsilon(1e-2));
  CHECK(traj[11] == doctest::Approx(-0.05894).epsilon(1e-3));
  prev = 1.0;
  for (std::size_t i = 0; i < 11; ++i) {
    REQUIRE(std::abs(traj[i]) < prev);
    prev = std::abs(traj[i]);
  }
  double late = 0.0;
  for (std::size_t i = 40; i < 50; ++i) late = std::max(late, std::abs(traj[i]));
  CHECK(late < 0.1);
}

TEST_CASE("Adam: a non-finite gradient aborts without touching parameters") {
  Rng rng(22);
  LstmParams p = LstmParams::random(kVocabSize, 4, kVocabSize, rng);
  LstmParams g = p.zeros_like();
  g.w_h(1, 2) = std::nan("");
  AdamState s = AdamState::for_params(p);
  const LstmParams before = p;
  try {
    adam_update(p, g, s, 0.01);
    FAIL("expected TrainingAborted");
  } catch (const TrainingAborted& e) {
    CHECK(std::string(e.what()).find("w_h") != std::string::npos);
  }
  CHECK(p == before);
  CHECK(s.t == 0);
}

TEST_CASE("default configuration and the four variants") {
  const GanConfig a = gan_variant('a');
  CHECK(a.learning_rate == 0.001);
  CHECK(a.batch_size == 200);
  CHECK(a.total_iters == 20'000);
  CHECK(a.schedule.tau_start == 5.0);
  CHECK(a.schedule.tau_end == 1.0);
  CHECK(a.schedule.anneal_iters == 10'000);
  CHECK(a.input_target_prob == 0.9);
  CHECK(a.gen_sample_size == 200);
  CHECK(a.anneal_target == AnnealTarget::generator_and_inputs);
  CHECK(a.noise_target == NoiseTarget::both);
  CHECK_NOTHROW(a.validate());

  GanConfig b = gan_variant('b');
  CHECK(b.gen_sample_size == 1000);
  b.gen_sample_size = 200;
  CHECK(nlohmann::json(b) == nlohmann::json(a));
  CHECK(gan_variant('c').anneal_target == AnnealTarget::inputs_only);
  CHECK(gan_variant('d').noise_target == NoiseTarget::hidden_only);
  CHECK_THROWS_AS(gan_variant('e'), DomainError);

  GanConfig bad = a;
  bad.total_iters = 10;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = a;
  bad.input_target_prob = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  const GanConfig round = nlohmann::json(gan_variant('d')).get<GanConfig>();
  CHECK(nlohmann::json(round) == nlohmann::json(gan_variant('d')));
}

TEST_CASE("zero-parameter players start at the equilibrium losses") {
  const GanConfig c = small_gan(10);
  GanState st = init_gan(c);
  st.gen.params.set_zero();
  st.disc.params.set_zero();
  const auto data = corpus(100, 23);
  GanStreams streams = GanStreams::from_seed(c.seed);
  const IterationLosses l = gan_iteration(st, c, data, 1, streams);
  CHECK(l.d_loss == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  // The generator is scored against the discriminator after its first step.
  CHECK(std::abs(l.g_loss) < 0.01);
  CHECK(l.tau == tau_at(c.schedule, 1));

  const Discriminator d0 = Discriminator::zeros(8);
  CHECK(g_loss(discriminate(d0, testing::random_soft_batch(streams.batch, 4, kSeqLen))).value == 0.0);
}

TEST_CASE("each iteration updates the discriminator before the generator") {
  const GanConfig c = small_gan(4);
  GanState st = init_gan(c);
  const auto data = corpus(100, 24);
  GanStreams streams = GanStreams::from_seed(c.seed);
  for (std::size_t t = 1; t <= 3; ++t) {
    const LstmParams g0 = st.gen.params;
    const LstmParams d0 = st.disc.params;
    std::vector<GanPhase> seen;
    gan_iteration(st, c, data, t, streams, [&](std::size_t it, GanPhase phase, const GanState& s) {
      CHECK(it == t);
      seen.push_back(phase);
      if (phase == GanPhase::discriminator_updated) {
        CHECK(s.gen.params == g0);
        CHECK_FALSE(s.disc.params == d0);
      } else {
        CHECK_FALSE(s.gen.params == g0);
      }
    });
    CHECK(seen == std::vector<GanPhase>{GanPhase::discriminator_updated, GanPhase::generator_updated});
  }
}

TEST_CASE("generator step leaves the discriminator untouched") {
  const GanConfig c = small_gan(4);
  GanState st = init_gan(c);
  const auto data = corpus(100, 25);
  GanStreams streams = GanStreams::from_seed(c.seed);
  LstmParams d_after_disc_step;
  gan_iteration(st, c, data, 1, streams, [&](std::size_t, GanPhase phase, const GanState& s) {
    if (phase == GanPhase::discriminator_updated) d_after_disc_step = s.disc.params;
    else CHECK(s.disc.params == d_after_disc_step);
  });
}

TEST_CASE("200-iteration smoke run stays finite and logs the schedule") {
  const GanConfig c = small_gan(200);
  const auto data = corpus(500, 26);
  const auto dir = testing::scratch_dir("training_smoke");
  const GanRunResult r = train_gan(c, data, dir);
  REQUIRE(r.log.size() == 200);
  for (const auto& rec : r.log) {
    CHECK(std::isfinite(rec.d_loss));
    CHECK(std::isfinite(rec.g_loss));
    CHECK(rec.d_loss >= 0.0);
    CHECK(rec.d_loss <= 10.0);
    CHECK(rec.tau == tau_at(c.schedule, rec.iteration));
    CHECK(rec.validity_rate.has_value() == (rec.iteration % c.eval_every == 0));
    CHECK_FALSE(rec.wall_ms.has_value());
  }
  CHECK(std::filesystem::exists(dir / "losses.csv"));
  CHECK(std::filesystem::exists(dir / "ckpt_100"));
  CHECK(std::filesystem::exists(dir / "ckpt_200"));

  std::istringstream csv(slurp(dir / "losses.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == gan_csv_header());
  CHECK(gan_csv_header() == "iteration,d_loss,g_loss,tau,validity_rate,wall_ms");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 200);
}

TEST_CASE("identical seeds produce byte-identical loss logs") {
  const GanConfig c = small_gan(40);
  const auto data = corpus(300, 27);
  const auto a = testing::scratch_dir("training_det_a");
  const auto b = testing::scratch_dir("training_det_b");
  train_gan(c, data, a);
  train_gan(c, data, b);
  CHECK(slurp(a / "losses.csv") == slurp(b / "losses.csv"));
  CHECK(slurp(a / "ckpt_40") == slurp(b / "ckpt_40"));

  GanConfig other = c;
  other.seed = 12;
  const auto o = testing::scratch_dir("training_det_o");
  train_gan(other, data, o);
  CHECK(slurp(a / "losses.csv") != slurp(o / "losses.csv"));
}

TEST_CASE("CSV rows leave absent columns empty") {
  TrainLogRecord r{3, 1.5, -0.25, 4.5, std::nullopt, std::nullopt};
  CHECK(to_csv_row(r) == "3,1.5,-0.25,4.5,,");
  r.validity_rate = 0.5;
  r.wall_ms = 12.0;
  CHECK(to_csv_row(r) == "3,1.5,-0.25,4.5,0.5,12");
  CHECK(mle_csv_header() == "iteration,nll,validity_rate,wall_ms");
}

TEST_CASE("validity of hand-built and untrained models") {
  Rng rng(28);
  const Generator good{testing::x_then_spaces_params(8), {}};
  const Generator plus{testing::constant_symbol_params(8, '+'), {}};
  CHECK(evaluate_validity(good, 300, rng) == 1.0);
  CHECK(evaluate_validity(plus, 300, rng) == 0.0);
  const LanguageModel good_lm{testing::x_then_spaces_params(8)};
  const LanguageModel plus_lm{testing::constant_symbol_params(8, '+')};
  CHECK(evaluate_validity(good_lm, 300, rng) == 1.0);
  CHECK(evaluate_validity(plus_lm, 300, rng) == 0.0);

  CHECK(evaluate_validity(Generator::random(32, rng), 1000, rng) < 0.2);
  CHECK(evaluate_validity(LanguageModel::random(32, rng), 1000, rng) < 0.2);
  CHECK_THROWS_AS(evaluate_validity(good, 0, rng), DomainError);
}

TEST_CASE("validity report statistics") {
  const std::vector<std::string> lines{pad_right("x+x", 12), "x+x+xxxxxxxx", "++++++++++++"};
  const ValidityReport r = validity_report(lines);
  CHECK(r.samples == 3);
  CHECK(r.validity_rate == doctest::Approx(1.0 / 3.0));
  // Prefix lengths count expression characters only.
  CHECK(r.prefix_histogram[0] == 1);
  CHECK(r.prefix_histogram[3] == 1);
  CHECK(r.prefix_histogram[5] == 1);
  double sum = 0.0;
  for (double f : r.char_freq) sum += f;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("a short MLE run lowers the held-out NLL") {
  MleConfig c;
  c.hidden_size = 8;
  c.batch_size = 32;
  c.total_iters = 150;
  c.learning_rate = 0.01;
  c.eval_every = 50;
  c.eval_samples = 50;
  c.checkpoint_every = 150;
  const auto data = corpus(400, 29);
  const auto dir = testing::scratch_dir("training_mle");
  const MleRunResult r = train_mle(c, data, dir);
  CHECK(r.train_size + r.heldout_size == 400);
  CHECK(r.heldout_size == 40);
  CHECK(r.initial_heldout_nll == doctest::Approx(std::log(6.0)).epsilon(0.01));
  CHECK(r.heldout_nll < r.initial_heldout_nll);
  CHECK(r.log.size() == 150);
  CHECK(std::filesystem::exists(dir / "nll.csv"));
  CHECK(std::filesystem::exists(dir / "ckpt_150"));
}
