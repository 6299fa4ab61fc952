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

#ifndef CBSQ_NUMERICS_HPP
#define CBSQ_NUMERICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cbsq {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kDropTolerance = 1e-12;

// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }

  DenseMatrix transpose() const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix operator-(const DenseMatrix& rhs) const;

  // Largest |a_ij - a_ji|; requires a square matrix.
  double max_asymmetry() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column j belongs to values[j]
};

// Full eigendecomposition of a symmetric matrix. Eigenvectors follow a fixed
// sign rule (first component with |c| > 1e-10 is positive); within a
// degenerate cluster columns are ordered lexicographically, largest first.
// Throws InvalidArgument naming the maximal asymmetry if the input is not
// symmetric within kSymmetryTolerance.
EigenSystem dense_symmetric_eigen(const DenseMatrix& m);

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Square sparse matrix in CSR layout, immutable once built. Entries are stored
// row-major then by column; duplicates are summed in input order and entries
// with |v| < drop tolerance are removed.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t dimension);

  static SparseMatrix from_triplets(std::size_t dimension, std::vector<Triplet> triplets,
                                    double drop_tolerance = kDropTolerance);
  static SparseMatrix from_dense(const DenseMatrix& m, double drop_tolerance = kDropTolerance);

  std::size_t dimension() const { return dimension_; }
  std::size_t nonzeros() const { return values_.size(); }

  // Value at (row, col), zero if not stored.
  double at(std::size_t row, std::size_t col) const;

  void multiply(std::span<const double> x, std::span<double> y) const;

  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  SparseMatrix transpose() const;

  double max_asymmetry() const;
  double max_abs() const;
  // Frobenius norm.
  double norm() const;

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t dimension_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

struct LanczosOptions {
  std::uint64_t seed = 20001212;
  double tolerance = 1e-11;
  // Cap on Krylov steps per locked eigenpair; zero means the matrix dimension.
  std::size_t max_steps = 0;
};

// Lowest k eigenvalues (ascending) by Lanczos with full reorthogonalization
// and explicit locking of converged eigenvectors, so degenerate multiplets are
// resolved. Throws InvalidArgument if k exceeds the dimension and
// NumericalError on non-convergence.
std::vector<double> sparse_lowest_eigen(const SparseMatrix& m, std::size_t k,
                                        const LanczosOptions& options = {});

}  // namespace cbsq

#endif  // CBSQ_NUMERICS_HPP
