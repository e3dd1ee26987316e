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

#include "ggan/adam.hpp"

#include <cmath>

#include "ggan/errors.hpp"

namespace ggan {

AdamState AdamState::for_shapes(std::span<const Matrix* const> params) {
  AdamState s;
  for (const Matrix* p : params) {
    s.m.emplace_back(p->rows(), p->cols());
    s.v.emplace_back(p->rows(), p->cols());
  }
  return s;
}

AdamState AdamState::for_params(const LstmParams& params) {
  std::vector<const Matrix*> shapes;
  params.for_each([&shapes](std::string_view, const Matrix& m) { shapes.push_back(&m); });
  return for_shapes(shapes);
}

void adam_update(std::span<const AdamParam> params, AdamState& state, double lr,
                 const AdamOptions& opts) {
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ShapeError("adam_update: optimizer state holds " + std::to_string(state.m.size()) +
                     " moments for " + std::to_string(params.size()) + " parameters");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    require_same_shape(*params[i].value, *params[i].grad, "adam_update");
    require_same_shape(*params[i].value, state.m[i], "adam_update");
    if (!params[i].grad->all_finite()) {
      throw TrainingAborted("non-finite gradient for parameter '" + params[i].name + "'");
    }
  }

  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(opts.beta1, t);
  const double c2 = 1.0 - std::pow(opts.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix& theta = *params[i].value;
    const Matrix& g = *params[i].grad;
    Matrix& m = state.m[i];
    Matrix& v = state.v[i];
    for (std::size_t j = 0; j < theta.size(); ++j) {
      m[j] = opts.beta1 * m[j] + (1.0 - opts.beta1) * g[j];
      v[j] = opts.beta2 * v[j] + (1.0 - opts.beta2) * g[j] * g[j];
      const double m_hat = m[j] / c1;
      const double v_hat = v[j] / c2;
      theta[j] -= lr * m_hat / (std::sqrt(v_hat) + opts.eps);
    }
  }
}

void adam_update(LstmParams& params, const LstmParams& grads, AdamState& state, double lr,
                 const AdamOptions& opts) {
  std::vector<AdamParam> list;
  for (const auto& [name, field] : LstmParams::kFields) {
    list.push_back({std::string(name), &(params.*field), &(grads.*field)});
  }
  adam_update(list, state, lr, opts);
}

}  // namespace ggan
