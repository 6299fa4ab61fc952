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

#ifndef CBSQ_MODE_SPACE_HPP
#define CBSQ_MODE_SPACE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cbsq/numerics.hpp"

namespace cbsq {

// Labels of the unbound single-particle modes.
class ModeBasis {
 public:
  ModeBasis() = default;
  explicit ModeBasis(std::vector<std::string> labels);
  static ModeBasis numbered(std::size_t count);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t m) const { return labels_.at(m); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

// O[m,n] = <psi_m|O|psi_n>.
class OneBodyTensor {
 public:
  OneBodyTensor() = default;
  explicit OneBodyTensor(std::size_t modes) : modes_(modes), data_(modes * modes, 0.0) {}
  static OneBodyTensor from_matrix(const DenseMatrix& m);

  std::size_t modes() const { return modes_; }
  double& operator()(std::size_t m, std::size_t n) { return data_[m * modes_ + n]; }
  double operator()(std::size_t m, std::size_t n) const { return data_[m * modes_ + n]; }

  DenseMatrix matrix() const;
  // Throws InvalidArgument if O is not symmetric within kSymmetryTolerance.
  void validate() const;

 private:
  std::size_t modes_ = 0;
  std::vector<double> data_;
};

// T4[m,n,p,q] = <psi_m(1) psi_n(2)|T(1,2)|psi_p(1) psi_q(2)>; slot order is
// fixed: first bra and first ket index belong to particle 1.
class TwoBodyTensor {
 public:
  TwoBodyTensor() = default;
  explicit TwoBodyTensor(std::size_t modes) : modes_(modes), data_(modes * modes * modes * modes, 0.0) {}

  std::size_t modes() const { return modes_; }
  double& operator()(std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
    return data_[((m * modes_ + n) * modes_ + p) * modes_ + q];
  }
  double operator()(std::size_t m, std::size_t n, std::size_t p, std::size_t q) const {
    return data_[((m * modes_ + n) * modes_ + p) * modes_ + q];
  }
  const std::vector<double>& flat() const { return data_; }
  std::vector<double>& flat() { return data_; }

  double max_exchange_violation() const;   // |T[m,n,p,q] - T[n,m,q,p]|
  double max_hermitian_violation() const;  // |T[m,n,p,q] - T[p,q,m,n]|
  // Throws InvalidArgument naming the violated symmetry.
  void validate() const;

 private:
  std::size_t modes_ = 0;
  std::vector<double> data_;
};

// One-body and two-body tensors in a common unbound-mode basis.
struct ModeSpace {
  ModeBasis basis;
  OneBodyTensor one_body;
  TwoBodyTensor two_body;

  std::size_t modes() const { return one_body.modes(); }
  // Throws InvalidArgument if the pieces disagree in size or break symmetry.
  void validate() const;
};

// Matrix on the symmetric two-particle subspace, indexed by unordered pairs
// {p <= q} in lexicographic order. |{p,q}> = (|pq> + |qp>)/sqrt(2) for p != q
// and |pp> otherwise.
class PairHamiltonian {
 public:
  PairHamiltonian() = default;
  // Hook for supplying a custom symmetric h on the pair subspace.
  PairHamiltonian(std::size_t modes, DenseMatrix matrix);

  std::size_t modes() const { return modes_; }
  std::size_t dimension() const { return pairs_.size(); }
  const DenseMatrix& matrix() const { return matrix_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::size_t index_of(std::size_t p, std::size_t q) const;

 private:
  std::size_t modes_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  DenseMatrix matrix_;
};

PairHamiltonian build_pair_hamiltonian(const OneBodyTensor& one_body, const TwoBodyTensor& two_body);

class BoundPolicy {
 public:
  enum class Kind { kBelowEdge, kLowestK };

  // Negative margin selects the default 1e-8*|edge| + 1e-12.
  static BoundPolicy below_edge(double margin = -1.0);
  static BoundPolicy lowest_k(std::size_t k);

  Kind kind() const { return kind_; }
  bool has_margin() const { return margin_ >= 0.0; }
  double margin_for(double edge) const;
  double margin() const { return margin_; }
  std::size_t k() const { return k_; }

 private:
  Kind kind_ = Kind::kBelowEdge;
  double margin_ = -1.0;
  std::size_t k_ = 0;
};

// Bound eigenstates of h: energies ascending, and coefficient tensors with
// |phi_a> = sum_{p,q} c_a[p,q] |psi_p(1) psi_q(2)>, c_a symmetric.
class CompositeSpectrum {
 public:
  CompositeSpectrum() = default;
  CompositeSpectrum(std::size_t modes, double continuum_edge, std::vector<double> energies,
                    std::vector<std::vector<double>> coefficients);

  std::size_t modes() const { return modes_; }
  std::size_t size() const { return energies_.size(); }
  bool empty() const { return energies_.empty(); }
  double continuum_edge() const { return continuum_edge_; }
  const std::vector<double>& energies() const { return energies_; }
  double energy(std::size_t alpha) const { return energies_.at(alpha); }
  // c_a[p,q] without range checks.
  double coefficient(std::size_t alpha, std::size_t p, std::size_t q) const {
    return coefficients_[alpha][p * modes_ + q];
  }
  const std::vector<double>& coefficients(std::size_t alpha) const { return coefficients_.at(alpha); }

 private:
  std::size_t modes_ = 0;
  double continuum_edge_ = 0.0;
  std::vector<double> energies_;
  std::vector<std::vector<double>> coefficients_;
};

// Minimum energy of two free constituents: twice the lowest eigenvalue of O.
double continuum_edge(const OneBodyTensor& one_body);

CompositeSpectrum solve_bound_states(const PairHamiltonian& h, const OneBodyTensor& one_body,
                                     const BoundPolicy& policy);

// <phi_a(1,2)|psi_p(1) psi_q(2)>, range-checked.
double pair_overlap(const CompositeSpectrum& spectrum, std::size_t alpha, std::size_t p, std::size_t q);

}  // namespace cbsq

#endif  // CBSQ_MODE_SPACE_HPP
