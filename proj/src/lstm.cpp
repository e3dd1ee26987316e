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

#include "ggan/lstm.hpp"

#include <cmath>

#include "ggan/errors.hpp"
#include "ggan/numeric.hpp"

namespace ggan {
namespace {

void expect_shape(const Matrix& m, std::size_t rows, std::size_t cols, std::string_view name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError("LstmParams." + std::string(name) + " is " + m.shape_string() + ", expected [" +
                     std::to_string(rows) + "x" + std::to_string(cols) + "]");
  }
}

}  // namespace

LstmParams LstmParams::zeros(std::size_t input_size, std::size_t hidden_size,
                             std::size_t output_size) {
  const std::size_t g = 4 * hidden_size;
  LstmParams p;
  p.input_size = input_size;
  p.hidden_size = hidden_size;
  p.output_size = output_size;
  p.w_x = Matrix(input_size, g);
  p.w_h = Matrix(hidden_size, g);
  p.bias = Matrix(1, g);
  p.w_out = Matrix(hidden_size, output_size);
  p.b_out = Matrix(1, output_size);
  p.c0 = Matrix(1, hidden_size);
  p.x0 = Matrix(1, input_size);
  return p;
}

LstmParams LstmParams::random(std::size_t input_size, std::size_t hidden_size,
                              std::size_t output_size, Rng& rng, double init_scale,
                              double forget_bias) {
  LstmParams p = zeros(input_size, hidden_size, output_size);
  for (Matrix* m : {&p.w_x, &p.w_h, &p.bias, &p.w_out, &p.b_out}) {
    for (double& v : m->values()) v = init_scale * (2.0 * rng.uniform() - 1.0);
  }
  for (std::size_t j = hidden_size; j < 2 * hidden_size; ++j) p.bias(0, j) = forget_bias;
  return p;
}

void LstmParams::set_zero() {
  for_each([](std::string_view, Matrix& m) { m.set_zero(); });
}

bool LstmParams::all_finite() const {
  bool ok = true;
  for_each([&ok](std::string_view, const Matrix& m) { ok = ok && m.all_finite(); });
  return ok;
}

void LstmParams::validate() const {
  const std::size_t g = 4 * hidden_size;
  expect_shape(w_x, input_size, g, "w_x");
  expect_shape(w_h, hidden_size, g, "w_h");
  expect_shape(bias, 1, g, "bias");
  expect_shape(w_out, hidden_size, output_size, "w_out");
  expect_shape(b_out, 1, output_size, "b_out");
  expect_shape(c0, 1, hidden_size, "c0");
  expect_shape(x0, 1, input_size, "x0");
}

StepCache lstm_cell_forward(const LstmParams& p, const LstmState& state, const Matrix& x) {
  const std::size_t batch = x.rows();
  const std::size_t hs = p.hidden_size;
  if (x.cols() != p.input_size) {
    throw ShapeError("lstm step: input " + x.shape_string() + " does not match input size " +
                     std::to_string(p.input_size));
  }
  if (state.h.rows() != batch || state.h.cols() != hs || !state.c.same_shape(state.h)) {
    throw ShapeError("lstm step: state " + state.h.shape_string() + "/" + state.c.shape_string() +
                     " does not match batch " + std::to_string(batch) + " and hidden size " +
                     std::to_string(hs));
  }

  Matrix z = matmul(x, p.w_x);
  matmul_acc(state.h, p.w_h, z);
  add_row_inplace(z, p.bias);

  StepCache cache{x, state.h, state.c, Matrix(batch, hs), Matrix(batch, hs), Matrix(batch, hs),
                  Matrix(batch, hs), Matrix(batch, hs), Matrix(batch, hs), Matrix(batch, hs)};
  for (std::size_t b = 0; b < batch; ++b) {
    const auto zr = z.row(b);
    for (std::size_t j = 0; j < hs; ++j) {
      const double i = sigmoid(zr[j]);
      const double f = sigmoid(zr[hs + j]);
      const double o = sigmoid(zr[2 * hs + j]);
      const double g = std::tanh(zr[3 * hs + j]);
      const double c = f * state.c(b, j) + i * g;
      const double tc = std::tanh(c);
      cache.gate_i(b, j) = i;
      cache.gate_f(b, j) = f;
      cache.gate_o(b, j) = o;
      cache.cand(b, j) = g;
      cache.c(b, j) = c;
      cache.tanh_c(b, j) = tc;
      cache.h(b, j) = o * tc;
    }
  }
  return cache;
}

CellInputGrads lstm_cell_backward(const LstmParams& p, const StepCache& cache, const Matrix& dh,
                                  const Matrix& dc, LstmParams& grads) {
  require_same_shape(cache.h, dh, "lstm backward (dh)");
  require_same_shape(cache.c, dc, "lstm backward (dc)");
  const std::size_t batch = cache.h.rows();
  const std::size_t hs = p.hidden_size;

  Matrix dz(batch, 4 * hs);
  CellInputGrads out{Matrix(batch, p.input_size), Matrix(batch, hs), Matrix(batch, hs)};
  for (std::size_t b = 0; b < batch; ++b) {
    auto dzr = dz.row(b);
    for (std::size_t j = 0; j < hs; ++j) {
      const double i = cache.gate_i(b, j);
      const double f = cache.gate_f(b, j);
      const double o = cache.gate_o(b, j);
      const double g = cache.cand(b, j);
      const double tc = cache.tanh_c(b, j);
      const double dhv = dh(b, j);
      const double dct = dc(b, j) + dhv * o * (1.0 - tc * tc);
      dzr[j] = dct * g * i * (1.0 - i);
      dzr[hs + j] = dct * cache.c_prev(b, j) * f * (1.0 - f);
      dzr[2 * hs + j] = dhv * tc * o * (1.0 - o);
      dzr[3 * hs + j] = dct * i * (1.0 - g * g);
      out.dc_prev(b, j) = dct * f;
    }
  }

  matmul_tn_acc(cache.x, dz, grads.w_x);
  matmul_tn_acc(cache.h_prev, dz, grads.w_h);
  colsum_acc(dz, grads.bias);
  matmul_nt_acc(dz, p.w_x, out.dx);
  matmul_nt_acc(dz, p.w_h, out.dh_prev);
  return out;
}

Matrix readout_forward(const LstmParams& p, const Matrix& h) {
  Matrix out = matmul(h, p.w_out);
  add_row_inplace(out, p.b_out);
  return out;
}

Matrix readout_backward(const LstmParams& p, const Matrix& h, const Matrix& dout,
                        LstmParams& grads) {
  matmul_tn_acc(h, dout, grads.w_out);
  colsum_acc(dout, grads.b_out);
  return matmul_nt(dout, p.w_out);
}

StepOutput lstm_step(const LstmParams& p, const LstmState& state, const Matrix& x) {
  StepCache cache = lstm_cell_forward(p, state, x);
  Matrix logits = readout_forward(p, cache.h);
  LstmState next{cache.c, cache.h};
  return {std::move(next), std::move(logits), std::move(cache)};
}

CellInputGrads lstm_step_backward(const LstmParams& p, const StepCache& cache,
                                  const Matrix& dlogits, const Matrix& dh_next,
                                  const Matrix& dc_next, LstmParams& grads) {
  const Matrix dh = add(readout_backward(p, cache.h, dlogits, grads), dh_next);
  return lstm_cell_backward(p, cache, dh, dc_next, grads);
}

}  // namespace ggan
