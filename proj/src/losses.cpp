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

#include "ggan/losses.hpp"

#include <algorithm>
#include <cmath>

#include "ggan/errors.hpp"

namespace ggan {
namespace {

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }
bool clamped(double p) { return p < kProbClamp || p > 1.0 - kProbClamp; }

void require_column(const Matrix& m, const char* what) {
  if (m.cols() != 1 || m.rows() == 0) {
    throw ShapeError(std::string(what) + ": expected a nonempty column of probabilities, got " +
                     m.shape_string());
  }
}

}  // namespace

DiscriminatorLoss d_loss(const Matrix& d_real, const Matrix& d_fake) {
  require_column(d_real, "d_loss");
  require_column(d_fake, "d_loss");
  const double m = static_cast<double>(d_real.rows());
  const double k = static_cast<double>(d_fake.rows());
  DiscriminatorLoss out{0.0, Matrix(d_real.rows(), 1), Matrix(d_fake.rows(), 1)};
  for (std::size_t i = 0; i < d_real.size(); ++i) {
    const double p = clamp_prob(d_real[i]);
    out.value -= std::log(p) / m;
    out.grad_real[i] = clamped(d_real[i]) ? 0.0 : -1.0 / (m * p);
  }
  for (std::size_t i = 0; i < d_fake.size(); ++i) {
    const double p = clamp_prob(d_fake[i]);
    out.value -= std::log1p(-p) / k;
    out.grad_fake[i] = clamped(d_fake[i]) ? 0.0 : 1.0 / (k * (1.0 - p));
  }
  return out;
}

GeneratorLoss g_loss(const Matrix& d_fake) {
  require_column(d_fake, "g_loss");
  const double k = static_cast<double>(d_fake.rows());
  GeneratorLoss out{0.0, Matrix(d_fake.rows(), 1)};
  for (std::size_t i = 0; i < d_fake.size(); ++i) {
    const double p = clamp_prob(d_fake[i]);
    out.value -= (std::log(p) - std::log1p(-p)) / k;
    out.grad_fake[i] = clamped(d_fake[i]) ? 0.0 : -1.0 / (k * p * (1.0 - p));
  }
  return out;
}

Matrix d_loss_real_logit_grad(const Matrix& p_real) {
  require_column(p_real, "d_loss_real_logit_grad");
  Matrix g(p_real.rows(), 1);
  const double m = static_cast<double>(p_real.rows());
  for (std::size_t i = 0; i < p_real.size(); ++i) g[i] = -(1.0 - p_real[i]) / m;
  return g;
}

Matrix d_loss_fake_logit_grad(const Matrix& p_fake) {
  require_column(p_fake, "d_loss_fake_logit_grad");
  Matrix g(p_fake.rows(), 1);
  const double k = static_cast<double>(p_fake.rows());
  for (std::size_t i = 0; i < p_fake.size(); ++i) g[i] = p_fake[i] / k;
  return g;
}

Matrix g_loss_logit_grad(const Matrix& p_fake) {
  require_column(p_fake, "g_loss_logit_grad");
  return Matrix(p_fake.rows(), 1, -1.0 / static_cast<double>(p_fake.rows()));
}

}  // namespace ggan
