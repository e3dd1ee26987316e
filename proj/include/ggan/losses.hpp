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

#include "ggan/matrix.hpp"

namespace ggan {

// Discriminator probabilities are clamped into [kProbClamp, 1 - kProbClamp]
// before any log is taken.
inline constexpr double kProbClamp = 1e-7;

struct DiscriminatorLoss {
  double value = 0.0;
  Matrix grad_real;  // d value / d d_real
  Matrix grad_fake;  // d value / d d_fake
};

// -(1/m) sum log d_real - (1/k) sum log(1 - d_fake).
DiscriminatorLoss d_loss(const Matrix& d_real, const Matrix& d_fake);

struct GeneratorLoss {
  double value = 0.0;
  Matrix grad_fake;
};

// -(1/k) sum log(d_fake / (1 - d_fake)).
GeneratorLoss g_loss(const Matrix& d_fake);

// The same gradients expressed on the discriminator's pre-sigmoid logits. They do
// not vanish when a probability saturates past the clamp.
Matrix d_loss_real_logit_grad(const Matrix& p_real);
Matrix d_loss_fake_logit_grad(const Matrix& p_fake);
Matrix g_loss_logit_grad(const Matrix& p_fake);

}  // namespace ggan
