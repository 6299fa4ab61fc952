// Copyright 2026 The cbsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <string>

#include "cbsq/error.hpp"
#include "cbsq/numerics.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cbsq;

namespace {

void check_eigensystem(const DenseMatrix& m, const EigenSystem& es) {
  const std::size_t n = m.rows();
  const DenseMatrix vtv = es.vectors.transpose() * es.vectors;
  CHECK((vtv - DenseMatrix::identity(n)).max_abs() <= 1e-10);
  const DenseMatrix mv = m * es.vectors;
  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(mv(i, j) - es.values[j] * es.vectors(i, j)));
  CHECK(residual <= 1e-9);
  for (std::size_t j = 1; j < n; ++j) CHECK(es.values[j] >= es.values[j - 1]);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(es.vectors(i, j)) > 1e-10) {
        CHECK(es.vectors(i, j) > 0.0);
        break;
      }
    }
  }
}

SparseMatrix laplacian(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i + 1 < n) {
      t.push_back({i, i + 1, -1.0});
      t.push_back({i + 1, i, -1.0});
    }
  }
  return SparseMatrix::from_triplets(n, t);
}

}  // namespace

TEST_CASE("dense eigen: exchange matrix and identity") {
  DenseMatrix x(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto ex = dense_symmetric_eigen(x);
  CHECK(ex.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(ex.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  check_eigensystem(x, ex);

  const auto id = dense_symmetric_eigen(DenseMatrix::identity(3));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  check_eigensystem(DenseMatrix::identity(3), id);
  // Degenerate cluster: lexicographically largest column first.
  CHECK(id.vectors(0, 0) == doctest::Approx(1.0));
  CHECK(id.vectors(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("dense eigen: two-site symmetric pair matrix") {
  const double r2 = std::sqrt(2.0);
  DenseMatrix h(3, 3);
  h(0, 0) = -4.0;
  h(1, 1) = -4.0;
  h(0, 2) = h(2, 0) = -r2;
  h(1, 2) = h(2, 1) = -r2;
  const auto es = dense_symmetric_eigen(h);
  CHECK(std::abs(es.values[0] + (2.0 + 2.0 * r2)) <= 1e-12);
  check_eigensystem(h, es);
}

TEST_CASE("dense eigen: random symmetric matrices are fully resolved") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto m = test::random_symmetric(30, seed);
    check_eigensystem(m, dense_symmetric_eigen(m));
  }
}

TEST_CASE("dense eigen rejects asymmetric input with a diagnostic") {
  DenseMatrix m(2, 2);
  m(0, 1) = 1.0;
  try {
    dense_symmetric_eigen(m);
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("asymmetry") != std::string::npos);
  }
}

TEST_CASE("sparse assembly merges duplicates, drops zeros and orders storage") {
  const auto m = SparseMatrix::from_triplets(
      3, {{2, 0, 1.0}, {0, 1, 0.5}, {0, 1, 0.25}, {1, 1, 1e-14}, {0, 0, -1.0}, {2, 0, -1.0}});
  const auto t = m.triplets();
  REQUIRE(t.size() == 2);
  CHECK(t[0].row == 0);
  CHECK(t[0].col == 0);
  CHECK(t[1].col == 1);
  CHECK(t[1].value == 0.75);
  CHECK(m.at(1, 1) == 0.0);
  CHECK(m.at(2, 0) == 0.0);
  CHECK(m.max_asymmetry() == 0.75);
  CHECK(m.transpose().at(1, 0) == 0.75);
}

TEST_CASE("sparse products match dense products") {
  const auto d = test::random_symmetric(12, 9);
  const auto s = SparseMatrix::from_dense(d);
  std::vector<double> x(12), y(12);
  for (std::size_t i = 0; i < 12; ++i) x[i] = std::sin(static_cast<double>(i));
  s.multiply(x, y);
  for (std::size_t i = 0; i < 12; ++i) {
    double ref = 0.0;
    for (std::size_t j = 0; j < 12; ++j) ref += d(i, j) * x[j];
    CHECK(y[i] == doctest::Approx(ref).epsilon(1e-14));
  }
  CHECK((s.to_dense() - d).max_abs() == 0.0);
}

TEST_CASE("lanczos: diagonal case") {
  const auto m = SparseMatrix::from_triplets(3, {{0, 0, 5.0}, {1, 1, 1.0}, {2, 2, 3.0}});
  const auto v = sparse_lowest_eigen(m, 2);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("lanczos: chain Laplacian ground value") {
  const auto v = sparse_lowest_eigen(laplacian(10), 1);
  CHECK(std::abs(v[0] - (2.0 - 2.0 * std::cos(std::numbers::pi / 11.0))) <= 1e-10);
}

TEST_CASE("lanczos agrees with the dense solver on random matrices") {
  const auto d = test::random_symmetric(50, 2024);
  const auto dense = dense_symmetric_eigen(d);
  const auto sparse = sparse_lowest_eigen(SparseMatrix::from_dense(d), 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(sparse[i] - dense.values[i]) <= 1e-8);

  for (std::size_t n : {7u, 40u, 120u, 200u}) {
    const auto m = test::random_symmetric(n, n);
    const auto ref = dense_symmetric_eigen(m);
    const auto k = std::min<std::size_t>(n, 6);
    const auto got = sparse_lowest_eigen(SparseMatrix::from_dense(m), k);
    for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(got[i] - ref.values[i]) <= 1e-8);
  }
}

TEST_CASE("lanczos resolves degenerate multiplets") {
  const auto m = SparseMatrix::from_triplets(6, {{0, 0, 2.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 2.0}, {4, 4, 3.0},
                                                 {5, 5, 1.0}});
  const auto v = sparse_lowest_eigen(m, 5);
  const std::vector<double> expected{1.0, 1.0, 1.0, 2.0, 2.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(v[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("lanczos is deterministic and validates its input") {
  const auto m = SparseMatrix::from_dense(test::random_symmetric(30, 5));
  CHECK(sparse_lowest_eigen(m, 3) == sparse_lowest_eigen(m, 3));
  CHECK_THROWS_AS(sparse_lowest_eigen(m, 31), InvalidArgument);
  const auto asym = SparseMatrix::from_triplets(2, {{0, 1, 1.0}});
  CHECK_THROWS_AS(sparse_lowest_eigen(asym, 1), InvalidArgument);
}
