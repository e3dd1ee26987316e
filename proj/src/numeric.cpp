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

#include "ggan/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "ggan/errors.hpp"
#include "ggan/kernels.hpp"

namespace ggan {
namespace {

void require_inner(const Matrix& a, std::size_t a_dim, const Matrix& b, std::size_t b_dim,
                   const char* op) {
  if (a_dim != b_dim) {
    throw ShapeError(std::string(op) + ": inner dimensions disagree " + a.shape_string() + " vs " +
                     b.shape_string());
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_inner(a, a.cols(), b, b.rows(), "matmul");
  Matrix c(a.rows(), b.cols());
  kernels::active().gemm_nn(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

void matmul_acc(const Matrix& a, const Matrix& b, Matrix& out) {
  require_inner(a, a.cols(), b, b.rows(), "matmul");
  if (out.rows() != a.rows() || out.cols() != b.cols()) {
    throw ShapeError("matmul: output " + out.shape_string() + " does not fit " + a.shape_string() +
                     " * " + b.shape_string());
  }
  kernels::active().gemm_nn(a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
}

void matmul_tn_acc(const Matrix& a, const Matrix& g, Matrix& out) {
  require_inner(a, a.rows(), g, g.rows(), "matmul_tn");
  if (out.rows() != a.cols() || out.cols() != g.cols()) {
    throw ShapeError("matmul_tn: output " + out.shape_string() + " does not fit " +
                     a.shape_string() + "^T * " + g.shape_string());
  }
  kernels::active().gemm_tn(a.data(), g.data(), out.data(), a.rows(), a.cols(), g.cols());
}

void matmul_nt_acc(const Matrix& g, const Matrix& b, Matrix& out) {
  require_inner(g, g.cols(), b, b.cols(), "matmul_nt");
  if (out.rows() != g.rows() || out.cols() != b.rows()) {
    throw ShapeError("matmul_nt: output " + out.shape_string() + " does not fit " +
                     g.shape_string() + " * " + b.shape_string() + "^T");
  }
  kernels::active().gemm_nt(g.data(), b.data(), out.data(), g.rows(), g.cols(), b.rows());
}

Matrix matmul_nt(const Matrix& g, const Matrix& b) {
  Matrix out(g.rows(), b.rows());
  matmul_nt_acc(g, b, out);
  return out;
}

MatmulGrads matmul_backward(const Matrix& a, const Matrix& b, const Matrix& g) {
  require_inner(a, a.cols(), b, b.rows(), "matmul_backward");
  if (g.rows() != a.rows() || g.cols() != b.cols()) {
    throw ShapeError("matmul_backward: upstream " + g.shape_string() + " does not match " +
                     a.shape_string() + " * " + b.shape_string());
  }
  MatmulGrads out{Matrix(a.rows(), a.cols()), Matrix(b.rows(), b.cols())};
  matmul_nt_acc(g, b, out.da);
  matmul_tn_acc(a, g, out.db);
  return out;
}

void add_row_inplace(Matrix& x, const Matrix& row) {
  if (row.rows() != 1 || row.cols() != x.cols()) {
    throw ShapeError("add_row: " + row.shape_string() + " cannot broadcast over " +
                     x.shape_string());
  }
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < x.rows(); ++r) k.add(x.row(r).data(), row.data(), x.row(r).data(), x.cols());
}

void colsum_acc(const Matrix& g, Matrix& out) {
  if (out.rows() != 1 || out.cols() != g.cols()) {
    throw ShapeError("colsum: " + out.shape_string() + " cannot hold column sums of " +
                     g.shape_string());
  }
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < g.rows(); ++r) k.add(out.data(), g.row(r).data(), out.data(), g.cols());
}

Matrix softmax_rows(const Matrix& h) {
  Matrix p(h.rows(), h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    const auto in = h.row(r);
    auto out = p.row(r);
    const double mx = *std::max_element(in.begin(), in.end());
    double total = 0.0;
    for (std::size_t j = 0; j < in.size(); ++j) {
      out[j] = std::exp(in[j] - mx);
      total += out[j];
    }
    const double inv = 1.0 / total;
    for (double& v : out) v *= inv;
  }
  return p;
}

Matrix softmax_rows_backward(const Matrix& p, const Matrix& g) {
  require_same_shape(p, g, "softmax_rows_backward");
  const auto& k = kernels::active();
  Matrix dh(p.rows(), p.cols());
  for (std::size_t r = 0; r < p.rows(); ++r) {
    const double inner = k.dot(p.row(r).data(), g.row(r).data(), p.cols());
    const auto pr = p.row(r);
    const auto gr = g.row(r);
    auto out = dh.row(r);
    for (std::size_t j = 0; j < p.cols(); ++j) out[j] = pr[j] * (gr[j] - inner);
  }
  return dh;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Matrix apply(Unary op, const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  const auto in = x.values();
  auto out = y.values();
  switch (op) {
    case Unary::tanh:
      std::transform(in.begin(), in.end(), out.begin(), [](double v) { return std::tanh(v); });
      break;
    case Unary::sigmoid:
      std::transform(in.begin(), in.end(), out.begin(), [](double v) { return sigmoid(v); });
      break;
  }
  return y;
}

Matrix apply_backward(Unary op, const Matrix& y, const Matrix& g) {
  require_same_shape(y, g, "apply_backward");
  Matrix dx(y.rows(), y.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double v = y[i];
    dx[i] = g[i] * (op == Unary::tanh ? 1.0 - v * v : v * (1.0 - v));
  }
  return dx;
}

Matrix apply(Binary op, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, op == Binary::add ? "add" : "mul");
  Matrix out(a.rows(), a.cols());
  const auto& k = kernels::active();
  if (op == Binary::add) {
    k.add(a.data(), b.data(), out.data(), a.size());
  } else {
    k.mul(a.data(), b.data(), out.data(), a.size());
  }
  return out;
}

BinaryGrads apply_backward(Binary op, const Matrix& a, const Matrix& b, const Matrix& g) {
  require_same_shape(a, b, "apply_backward");
  require_same_shape(a, g, "apply_backward");
  if (op == Binary::add) return {g, g};
  return {mul(g, b), mul(g, a)};
}

Matrix scale(const Matrix& x, double s) {
  Matrix out(x.rows(), x.cols());
  kernels::active().scale(s, x.data(), out.data(), x.size());
  return out;
}

double cross_entropy(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "cross_entropy");
  if (pred.rows() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (target[i] != 0.0) total -= target[i] * std::log(std::max(pred[i], kLogClamp));
  }
  return total / static_cast<double>(pred.rows());
}

Matrix softmax_cross_entropy_backward(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "softmax_cross_entropy_backward");
  Matrix dh(pred.rows(), pred.cols());
  const double inv_m = 1.0 / static_cast<double>(pred.rows());
  for (std::size_t i = 0; i < pred.size(); ++i) dh[i] = (pred[i] - target[i]) * inv_m;
  return dh;
}

GradCheckResult grad_check(const std::function<double()>& f, std::span<const GradCheckParam> params,
                           double eps) {
  if (!(eps >= 1e-7 && eps <= 1e-4)) {
    throw DomainError("grad_check: eps must lie in [1e-7, 1e-4], got " + std::to_string(eps));
  }
  auto eval = [&f](const std::string& where) {
    const double v = f();
    if (!std::isfinite(v)) throw EvaluationError("grad_check: non-finite loss " + where);
    return v;
  };
  eval("at the base point");

  GradCheckResult result;
  for (const auto& p : params) {
    require_same_shape(*p.value, *p.analytic, "grad_check");
    Matrix& theta = *p.value;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double saved = theta[i];
      theta[i] = saved + eps;
      const double up = eval("perturbing " + p.name);
      theta[i] = saved - eps;
      const double down = eval("perturbing " + p.name);
      theta[i] = saved;

      const double numeric = (up - down) / (2.0 * eps);
      const double analytic = (*p.analytic)[i];
      const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      const double rel = std::abs(analytic - numeric) / denom;
      if (result.worst_param.empty() || rel > result.max_rel_error) {
        result = {rel, p.name, i, analytic, numeric};
      }
    }
  }
  return result;
}

}  // namespace ggan
