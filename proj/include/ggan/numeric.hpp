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

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ggan/matrix.hpp"

// Forward operations with their analytic backward rules. Backward functions take
// the upstream gradient G (same shape as the forward output) and either return the
// input gradient or accumulate into a caller-owned buffer (`*_acc`).
namespace ggan {

// Gradients are plain matrices with the shape of their forward counterpart.
using Gradient = Matrix;

Matrix matmul(const Matrix& a, const Matrix& b);
// out += a * b
void matmul_acc(const Matrix& a, const Matrix& b, Matrix& out);
// out += a^T * g
void matmul_tn_acc(const Matrix& a, const Matrix& g, Matrix& out);
// out += g * b^T
void matmul_nt_acc(const Matrix& g, const Matrix& b, Matrix& out);
// g * b^T
Matrix matmul_nt(const Matrix& g, const Matrix& b);

struct MatmulGrads {
  Matrix da;
  Matrix db;
};
// dA = G b^T, dB = a^T G.
MatmulGrads matmul_backward(const Matrix& a, const Matrix& b, const Matrix& g);

// Adds a 1 x n row vector to every row of x.
void add_row_inplace(Matrix& x, const Matrix& row);
// out(1 x n) += column sums of g.
void colsum_acc(const Matrix& g, Matrix& out);

Matrix softmax_rows(const Matrix& h);
// dH_ij = p_ij (G_ij - sum_k G_ik p_ik), with p the forward output.
Matrix softmax_rows_backward(const Matrix& p, const Matrix& g);

double sigmoid(double x) noexcept;

enum class Unary { tanh, sigmoid };
enum class Binary { add, mul };

Matrix apply(Unary op, const Matrix& x);
// Backward in terms of the forward output y: tanh' = 1 - y^2, sigmoid' = y (1 - y).
Matrix apply_backward(Unary op, const Matrix& y, const Matrix& g);

Matrix apply(Binary op, const Matrix& a, const Matrix& b);
struct BinaryGrads {
  Matrix da;
  Matrix db;
};
BinaryGrads apply_backward(Binary op, const Matrix& a, const Matrix& b, const Matrix& g);

Matrix scale(const Matrix& x, double s);
inline Matrix scale_backward(const Matrix& g, double s) { return scale(g, s); }

inline Matrix tanh(const Matrix& x) { return apply(Unary::tanh, x); }
inline Matrix sigmoid(const Matrix& x) { return apply(Unary::sigmoid, x); }
inline Matrix add(const Matrix& a, const Matrix& b) { return apply(Binary::add, a, b); }
inline Matrix mul(const Matrix& a, const Matrix& b) { return apply(Binary::mul, a, b); }

// Floor applied to predicted probabilities before taking logs.
inline constexpr double kLogClamp = 1e-12;

// -(1/m) sum_ij target_ij log(max(pred_ij, kLogClamp)).
double cross_entropy(const Matrix& pred, const Matrix& target);
// Gradient of cross_entropy(softmax_rows(h), target) with respect to h: (pred - target)/m.
Matrix softmax_cross_entropy_backward(const Matrix& pred, const Matrix& target);

// A parameter under test: its value (perturbed in place) and the analytic gradient.
struct GradCheckParam {
  std::string name;
  Matrix* value;
  const Matrix* analytic;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Central differences against the supplied analytic gradients. Relative error per
// entry is |a - n| / max(|a|, |n|, 1e-8). Throws EvaluationError if f is non-finite
// and DomainError if eps is outside [1e-7, 1e-4].
GradCheckResult grad_check(const std::function<double()>& f, std::span<const GradCheckParam> params,
                           double eps = 1e-5);

}  // namespace ggan
