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

#include "cbsq/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "cbsq/error.hpp"
#include "random_stream.hpp"

namespace cbsq {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("DenseMatrix product: inner dimensions differ");
  DenseMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(r, k);
      if (a == 0.0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw InvalidArgument("DenseMatrix difference: shapes differ");
  DenseMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

double DenseMatrix::max_asymmetry() const {
  if (rows_ != cols_) throw InvalidArgument("max_asymmetry: matrix is not square");
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
  return worst;
}

double DenseMatrix::max_abs() const {
  double worst = 0.0;
  for (double v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

namespace {

constexpr double kSignThreshold = 1e-10;

void fix_sign(std::vector<double>& v) {
  for (double c : v) {
    if (std::abs(c) > kSignThreshold) {
      if (c < 0.0)
        for (double& x : v) x = -x;
      return;
    }
  }
}

bool lexicographically_greater(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) <= kSignThreshold) continue;
    return a[i] > b[i];
  }
  return false;
}

}  // namespace

EigenSystem dense_symmetric_eigen(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("dense_symmetric_eigen: matrix is not square");
  const double asym = m.max_asymmetry();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "dense_symmetric_eigen: matrix is not symmetric (max asymmetry " << asym << ")";
    throw InvalidArgument(msg.str());
  }
  const auto n = static_cast<Eigen::Index>(m.rows());
  EigenSystem out;
  out.vectors = DenseMatrix(m.rows(), m.cols());
  if (n == 0) return out;

  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + m(c, r));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw NumericalError("dense_symmetric_eigen: eigensolver did not converge");

  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::vector<std::vector<double>> columns(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& col = columns[static_cast<std::size_t>(j)];
    col.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, j);
    fix_sign(col);
  }

  // Order columns inside each degenerate cluster.
  const double scale = std::max(1.0, std::max(std::abs(values.front()), std::abs(values.back())));
  std::size_t begin = 0;
  while (begin < values.size()) {
    std::size_t end = begin + 1;
    while (end < values.size() && values[end] - values[end - 1] <= 1e-10 * scale) ++end;
    if (end - begin > 1) {
      std::vector<std::size_t> order(end - begin);
      std::iota(order.begin(), order.end(), begin);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return lexicographically_greater(columns[x], columns[y]);
      });
      // Values stay in solver order so they remain ascending.
      std::vector<std::vector<double>> sorted;
      for (std::size_t idx : order) sorted.push_back(columns[idx]);
      for (std::size_t i = begin; i < end; ++i) columns[i] = std::move(sorted[i - begin]);
    }
    begin = end;
  }

  out.values = std::move(values);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < columns.size(); ++i) out.vectors(i, j) = columns[j][i];
  return out;
}

SparseMatrix::SparseMatrix(std::size_t dimension)
    : dimension_(dimension), row_start_(dimension + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t dimension, std::vector<Triplet> triplets,
                                         double drop_tolerance) {
  for (const auto& t : triplets) {
    if (t.row >= dimension || t.col >= dimension)
      throw InvalidArgument("SparseMatrix: triplet index outside dimension");
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(dimension);
  std::size_t i = 0;
  while (i < triplets.size()) {
    double sum = 0.0;
    std::size_t j = i;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col) {
      sum += triplets[j].value;
      ++j;
    }
    if (std::abs(sum) >= drop_tolerance) {
      m.cols_.push_back(triplets[i].col);
      m.values_.push_back(sum);
      ++m.row_start_[triplets[i].row + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < dimension; ++r) m.row_start_[r + 1] += m.row_start_[r];
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& d, double drop_tolerance) {
  if (d.rows() != d.cols()) throw InvalidArgument("SparseMatrix::from_dense: matrix is not square");
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (d(r, c) != 0.0) t.push_back({r, c, d(r, c)});
  return from_triplets(d.rows(), std::move(t), drop_tolerance);
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= dimension_ || col >= dimension_) throw InvalidArgument("SparseMatrix::at: out of range");
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[row]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dimension_ || y.size() != dimension_)
    throw InvalidArgument("SparseMatrix::multiply: vector length mismatch");
  for (std::size_t r = 0; r < dimension_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::size_t r = 0; r < dimension_; ++r)
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) out.push_back({r, cols_[k], values_[k]});
  return out;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(dimension_, dimension_);
  for (const auto& t : triplets()) d(t.row, t.col) = t.value;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  auto t = triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(dimension_, std::move(t), 0.0);
}

double SparseMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (const auto& t : triplets()) worst = std::max(worst, std::abs(t.value - at(t.col, t.row)));
  return worst;
}

double SparseMatrix::max_abs() const {
  double worst = 0.0;
  for (double v : values_) worst = std::max(worst, std::abs(v));
  return worst;
}

double SparseMatrix::norm() const {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return std::sqrt(acc);
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("SparseMatrix sum: dimensions differ");
  auto t = a.triplets();
  auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return SparseMatrix::from_triplets(a.dimension(), std::move(t));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double normalize(std::vector<double>& v) {
  const double nrm = std::sqrt(dot(v, v));
  if (nrm > 0.0)
    for (double& x : v) x /= nrm;
  return nrm;
}

// Two passes of classical Gram-Schmidt against every vector in `sets`.
void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& a,
                   const std::vector<std::vector<double>>& b) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : a) axpy(-dot(q, w), q, w);
    for (const auto& q : b) axpy(-dot(q, w), q, w);
  }
}

struct RitzPair {
  double value;
  std::vector<double> coefficients;  // in the Lanczos basis
};

RitzPair lowest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const auto j = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag(j);
  Eigen::VectorXd sub(std::max<Eigen::Index>(j - 1, 0));
  for (Eigen::Index i = 0; i < j; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < j; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("Lanczos: tridiagonal eigensolver failed");
  RitzPair out;
  out.value = solver.eigenvalues()(0);
  out.coefficients.resize(static_cast<std::size_t>(j));
  for (Eigen::Index i = 0; i < j; ++i) out.coefficients[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, 0);
  return out;
}

double row_sum_bound(const SparseMatrix& m) {
  double worst = 0.0;
  std::vector<double> rows(m.dimension(), 0.0);
  for (const auto& t : m.triplets()) rows[t.row] += std::abs(t.value);
  for (double r : rows) worst = std::max(worst, r);
  return worst;
}

}  // namespace

std::vector<double> sparse_lowest_eigen(const SparseMatrix& m, std::size_t k, const LanczosOptions& options) {
  const std::size_t n = m.dimension();
  if (k > n) {
    std::ostringstream msg;
    msg << "sparse_lowest_eigen: requested " << k << " eigenvalues of a " << n << "-dimensional matrix";
    throw InvalidArgument(msg.str());
  }
  const double asym = m.max_asymmetry();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "sparse_lowest_eigen: matrix is not symmetric (max asymmetry " << asym << ")";
    throw InvalidArgument(msg.str());
  }
  const double scale = std::max(1.0, row_sum_bound(m));
  const double tol = options.tolerance * scale;

  std::vector<std::vector<double>> locked;
  std::vector<double> locked_values;
  RandomStream rng(options.seed);
  std::vector<double> w(n);

  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t room = n - locked.size();
    const std::size_t cap = options.max_steps == 0 ? room : std::min(room, options.max_steps);

    std::vector<double> q(n);
    double start_norm = 0.0;
    for (int attempt = 0; attempt < 8 && start_norm < 1e-8; ++attempt) {
      for (double& x : q) x = rng.uniform() - 0.5;
      orthogonalize(q, locked, {});
      start_norm = normalize(q);
    }
    if (start_norm < 1e-8) throw NumericalError("Lanczos: could not draw a start vector");

    std::vector<std::vector<double>> basis{q};
    std::vector<double> alpha;
    std::vector<double> beta;
    bool done = false;
    while (!done) {
      const auto& current = basis.back();
      m.multiply(current, w);
      alpha.push_back(dot(current, w));
      orthogonalize(w, locked, basis);
      const double b = std::sqrt(dot(w, w));
      const bool exhausted = basis.size() >= cap;
      const bool breakdown = b <= tol;
      const bool check = exhausted || breakdown || basis.size() % 8 == 0 || basis.size() == 1;
      if (check) {
        const auto ritz = lowest_ritz(alpha, beta);
        const double residual = b * std::abs(ritz.coefficients.back());
        if (residual <= tol || exhausted || breakdown) {
          if (residual > 1e3 * tol && !breakdown) {
            std::ostringstream msg;
            msg << "Lanczos: eigenpair " << e << " did not converge (residual " << residual << ")";
            throw NumericalError(msg.str());
          }
          std::vector<double> y(n, 0.0);
          for (std::size_t i = 0; i < basis.size(); ++i) axpy(ritz.coefficients[i], basis[i], y);
          orthogonalize(y, locked, {});
          normalize(y);
          m.multiply(y, w);
          locked_values.push_back(dot(y, w));
          locked.push_back(std::move(y));
          done = true;
          continue;
        }
      }
      beta.push_back(b);
      std::vector<double> next(w);
      for (double& x : next) x /= b;
      basis.push_back(std::move(next));
    }
  }
  std::sort(locked_values.begin(), locked_values.end());
  return locked_values;
}

}  // namespace cbsq
