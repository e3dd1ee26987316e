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

#include <cmath>

#include "ggan/errors.hpp"
#include "ggan/numeric.hpp"
#include "test_support.hpp"

using namespace ggan;
using ggan::testing::random_matrix;

namespace {

// Weighted-sum test loss: L = sum(w .* y) so that dL/dy = w.
double weighted_sum(const Matrix& y, const Matrix& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * w[i];
  return s;
}

}  // namespace

TEST_CASE("matmul small cases") {
  const Matrix b = Matrix::from_rows({{3, 4}, {5, 6}});
  CHECK(matmul(Matrix::identity(2), b) == b);
  const Matrix c = matmul(Matrix::from_rows({{1, 2}}), Matrix::from_rows({{3}, {4}}));
  CHECK(c.rows() == 1);
  CHECK(c.cols() == 1);
  CHECK(c(0, 0) == 11.0);
}

TEST_CASE("matmul rejects mismatched shapes and names both") {
  try {
    matmul(Matrix(2, 3), Matrix(2, 3));
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("[2x3]") != std::string::npos);
  }
  Matrix out(3, 3);
  CHECK_THROWS_AS(matmul_tn_acc(Matrix(2, 3), Matrix(3, 3), out), ShapeError);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>(3)), ShapeError);
}

TEST_CASE("matmul backward matches central differences") {
  Rng rng(1);
  Matrix a = random_matrix(rng, 4, 3);
  Matrix b = random_matrix(rng, 3, 2);
  const Matrix w = random_matrix(rng, 4, 2);
  const MatmulGrads g = matmul_backward(a, b, w);
  const std::vector<GradCheckParam> ps{{"a", &a, &g.da}, {"b", &b, &g.db}};
  const auto r = grad_check([&] { return weighted_sum(matmul(a, b), w); }, ps, 1e-5);
  CHECK(r.max_rel_error < 1e-6);
}

TEST_CASE("matmul is associative on random triples") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Matrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 4, 2), c = random_matrix(rng, 2, 5);
    const Matrix l = matmul(matmul(a, b), c);
    const Matrix r = matmul(a, matmul(b, c));
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(std::abs(l[i] - r[i]) < 1e-10);
  }
}

TEST_CASE("softmax_rows examples") {
  const Matrix u = softmax_rows(Matrix(1, 4, 0.0));
  for (double v : u.values()) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

  const Matrix p = softmax_rows(Matrix::from_rows({{std::log(1.0), std::log(3.0)}}));
  CHECK(p(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p(0, 1) == doctest::Approx(0.75).epsilon(1e-15));

  // Exact values: 1 - e^-1000 and e^-1000 ~ 5.08e-435, which rounds to 1 and 0
  // in double precision.
  const Matrix big = softmax_rows(Matrix::from_rows({{1000.0, 0.0}}));
  CHECK(big.all_finite());
  CHECK(big(0, 0) == 1.0);
  CHECK(big(0, 1) == 0.0);
}

TEST_CASE("softmax rows are stochastic with entries in (0,1)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Matrix p = softmax_rows(random_matrix(rng, 5, 6, 5.0));
    for (std::size_t r = 0; r < p.rows(); ++r) {
      double s = 0.0;
      for (double v : p.row(r)) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        s += v;
      }
      CHECK(std::abs(s - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("elementwise forward values") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(ggan::tanh(Matrix(1, 1, 0.0))(0, 0) == 0.0);
  CHECK(sigmoid(-800.0) >= 0.0);
  CHECK(sigmoid(800.0) == 1.0);
  const Matrix a = Matrix::from_rows({{1, 2}}), b = Matrix::from_rows({{3, 4}});
  CHECK(add(a, b) == Matrix::from_rows({{4, 6}}));
  CHECK(mul(a, b) == Matrix::from_rows({{3, 8}}));
  CHECK(scale(a, 2.0) == Matrix::from_rows({{2, 4}}));
  CHECK_THROWS_AS(add(a, Matrix(2, 1)), ShapeError);
}

TEST_CASE("backward rules pass the gradient check across seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    Rng rng(100 + seed);
    Matrix x = random_matrix(rng, 3, 3, 2.0);
    Matrix y = random_matrix(rng, 3, 3, 2.0);
    const Matrix w = random_matrix(rng, 3, 3);

    for (Unary op : {Unary::tanh, Unary::sigmoid}) {
      const Matrix dx = apply_backward(op, apply(op, x), w);
      const std::vector<GradCheckParam> ps{{"x", &x, &dx}};
      CHECK(grad_check([&] { return weighted_sum(apply(op, x), w); }, ps).max_rel_error < 1e-6);
    }
    for (Binary op : {Binary::add, Binary::mul}) {
      const BinaryGrads g = apply_backward(op, x, y, w);
      const std::vector<GradCheckParam> ps{{"a", &x, &g.da}, {"b", &y, &g.db}};
      CHECK(grad_check([&] { return weighted_sum(apply(op, x, y), w); }, ps).max_rel_error < 1e-6);
    }
    const Matrix ds = scale_backward(w, -0.7);
    const std::vector<GradCheckParam> ps{{"x", &x, &ds}};
    CHECK(grad_check([&] { return weighted_sum(scale(x, -0.7), w); }, ps).max_rel_error < 1e-6);

    const Matrix p = softmax_rows(x);
    const Matrix dh = softmax_rows_backward(p, w);
    const std::vector<GradCheckParam> sp{{"h", &x, &dh}};
    CHECK(grad_check([&] { return weighted_sum(softmax_rows(x), w); }, sp).max_rel_error < 1e-6);
  }
}

TEST_CASE("cross_entropy examples") {
  Matrix onehot(1, 6);
  onehot(0, 2) = 1.0;
  CHECK(cross_entropy(onehot, onehot) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cross_entropy(Matrix(1, 6, 1.0 / 6.0), onehot) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(std::isfinite(cross_entropy(Matrix(1, 6, 0.0), onehot)));
  CHECK(cross_entropy(Matrix(1, 6, 0.0), onehot) == doctest::Approx(-std::log(kLogClamp)));
  CHECK_THROWS_AS(cross_entropy(Matrix(1, 6), Matrix(2, 6)), ShapeError);
}

TEST_CASE("fused softmax + cross entropy gradient matches central differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(200 + seed);
    Matrix h = random_matrix(rng, 4, 6, 2.0);
    const Matrix target = testing::random_stochastic(rng, 4, 6);
    const Matrix dh = softmax_cross_entropy_backward(softmax_rows(h), target);
    const std::vector<GradCheckParam> ps{{"h", &h, &dh}};
    const auto r = grad_check([&] { return cross_entropy(softmax_rows(h), target); }, ps, 1e-5);
    CHECK(r.max_rel_error < 1e-6);
  }
}

TEST_CASE("grad_check on a quadratic is exact up to roundoff") {
  Matrix theta = Matrix::from_rows({{1, 2, 3}});
  const Matrix analytic = Matrix::from_rows({{2, 4, 6}});
  const std::vector<GradCheckParam> ps{{"theta", &theta, &analytic}};
  auto f = [&] {
    double s = 0.0;
    for (double v : theta.values()) s += v * v;
    return s;
  };
  const auto r = grad_check(f, ps, 1e-5);
  CHECK(r.max_rel_error < 1e-9);
  CHECK(theta == Matrix::from_rows({{1, 2, 3}}));

  // A wrong gradient is reported with its location.
  const Matrix wrong = Matrix::from_rows({{2, 5, 6}});
  const std::vector<GradCheckParam> bad{{"theta", &theta, &wrong}};
  const auto rb = grad_check(f, bad, 1e-5);
  CHECK(rb.worst_index == 1);
  CHECK(rb.max_rel_error == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("grad_check errors") {
  Matrix theta(1, 1, 1.0);
  const Matrix g(1, 1, 0.0);
  const std::vector<GradCheckParam> ps{{"t", &theta, &g}};
  CHECK_THROWS_AS(grad_check([] { return NAN; }, ps), EvaluationError);
  CHECK_THROWS_AS(grad_check([] { return 0.0; }, ps, 1e-2), DomainError);
  CHECK_THROWS_AS(grad_check([&] { return theta[0] > 1.0 ? INFINITY : 0.0; }, ps), EvaluationError);
}
