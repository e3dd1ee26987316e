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

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>

#include "ggan/matrix.hpp"
#include "ggan/random.hpp"

namespace ggan {

// Parameters of one LSTM layer plus its affine readout. Gate pre-activations for a
// batch are x * w_x + h * w_h + bias, a batch x 4H matrix whose column blocks are,
// in order: input gate, forget gate, output gate, candidate.
struct LstmParams {
  std::size_t input_size = 0;
  std::size_t hidden_size = 0;
  std::size_t output_size = 0;

  Matrix w_x;    // input_size x 4H
  Matrix w_h;    // H x 4H
  Matrix bias;   // 1 x 4H
  Matrix w_out;  // H x output_size
  Matrix b_out;  // 1 x output_size
  Matrix c0;     // 1 x H, learned initial cell state (generator, hidden-only noise)
  Matrix x0;     // 1 x input_size, learned first input (generator, optional)

  using Field = Matrix LstmParams::*;
  static constexpr std::array<std::pair<std::string_view, Field>, 7> kFields{{
      {"w_x", &LstmParams::w_x},
      {"w_h", &LstmParams::w_h},
      {"bias", &LstmParams::bias},
      {"w_out", &LstmParams::w_out},
      {"b_out", &LstmParams::b_out},
      {"c0", &LstmParams::c0},
      {"x0", &LstmParams::x0},
  }};

  static LstmParams zeros(std::size_t input_size, std::size_t hidden_size, std::size_t output_size);
  // Uniform in [-init_scale, init_scale], forget-gate bias set to forget_bias,
  // c0/x0 zero.
  static LstmParams random(std::size_t input_size, std::size_t hidden_size, std::size_t output_size,
                           Rng& rng, double init_scale = 0.08, double forget_bias = 1.0);

  LstmParams zeros_like() const { return zeros(input_size, hidden_size, output_size); }
  void set_zero();
  bool all_finite() const;
  // Throws ShapeError unless every matrix matches (input, hidden, output) sizes.
  void validate() const;

  template <class F>
  void for_each(F&& f) {
    for (const auto& [name, field] : kFields) f(name, this->*field);
  }
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [name, field] : kFields) f(name, this->*field);
  }

  friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

struct LstmState {
  Matrix c;  // batch x H
  Matrix h;  // batch x H

  static LstmState zeros(std::size_t batch, std::size_t hidden) {
    return {Matrix(batch, hidden), Matrix(batch, hidden)};
  }
};

// Everything the backward pass of one cell step needs.
struct StepCache {
  Matrix x;
  Matrix h_prev;
  Matrix c_prev;
  Matrix gate_i;
  Matrix gate_f;
  Matrix gate_o;
  Matrix cand;    // tanh candidate
  Matrix c;       // new cell state
  Matrix tanh_c;
  Matrix h;       // new hidden state
};

StepCache lstm_cell_forward(const LstmParams& p, const LstmState& state, const Matrix& x);

struct CellInputGrads {
  Matrix dx;
  Matrix dh_prev;
  Matrix dc_prev;
};

// dh and dc are the gradients arriving at the step's outputs h and c. Parameter
// gradients are accumulated into grads.
CellInputGrads lstm_cell_backward(const LstmParams& p, const StepCache& cache, const Matrix& dh,
                                  const Matrix& dc, LstmParams& grads);

// h * w_out + b_out.
Matrix readout_forward(const LstmParams& p, const Matrix& h);
// Accumulates w_out/b_out gradients and returns dL/dh.
Matrix readout_backward(const LstmParams& p, const Matrix& h, const Matrix& dout, LstmParams& grads);

struct StepOutput {
  LstmState state;
  Matrix logits;
  StepCache cache;
};

// One cell step followed by the readout.
StepOutput lstm_step(const LstmParams& p, const LstmState& state, const Matrix& x);
CellInputGrads lstm_step_backward(const LstmParams& p, const StepCache& cache, const Matrix& dlogits,
                                  const Matrix& dh_next, const Matrix& dc_next, LstmParams& grads);

}  // namespace ggan
