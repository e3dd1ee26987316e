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
#include <span>
#include <string>
#include <vector>

#include "ggan/lstm.hpp"
#include "ggan/matrix.hpp"

namespace ggan {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Per-parameter first and second moments plus the shared step counter.
struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::size_t t = 0;

  static AdamState for_shapes(std::span<const Matrix* const> params);
  static AdamState for_params(const LstmParams& params);
};

struct AdamParam {
  std::string name;
  Matrix* value;
  const Matrix* grad;
};

// One bias-corrected Adam step over every parameter. Throws TrainingAborted,
// naming the parameter, on a non-finite gradient; nothing is modified in that case.
void adam_update(std::span<const AdamParam> params, AdamState& state, double lr,
                 const AdamOptions& opts = {});
void adam_update(LstmParams& params, const LstmParams& grads, AdamState& state, double lr,
                 const AdamOptions& opts = {});

}  // namespace ggan
