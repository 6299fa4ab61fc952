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

#include "cbsq/mode_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cbsq/error.hpp"

namespace cbsq {

ModeBasis::ModeBasis(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("ModeBasis: at least one mode is required");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw InvalidArgument("ModeBasis: mode labels must be unique");
}

ModeBasis ModeBasis::numbered(std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < count; ++m) labels.push_back("m" + std::to_string(m));
  return ModeBasis(std::move(labels));
}

OneBodyTensor OneBodyTensor::from_matrix(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("OneBodyTensor: matrix is not square");
  OneBodyTensor o(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) o(r, c) = m(r, c);
  return o;
}

DenseMatrix OneBodyTensor::matrix() const {
  DenseMatrix m(modes_, modes_);
  for (std::size_t r = 0; r < modes_; ++r)
    for (std::size_t c = 0; c < modes_; ++c) m(r, c) = (*this)(r, c);
  return m;
}

void OneBodyTensor::validate() const {
  const double asym = matrix().max_asymmetry();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "OneBodyTensor: O is not symmetric (max asymmetry " << asym << ")";
    throw InvalidArgument(msg.str());
  }
}

double TwoBodyTensor::max_exchange_violation() const {
  double worst = 0.0;
  const std::size_t n = modes_;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          worst = std::max(worst, std::abs((*this)(m, k, p, q) - (*this)(k, m, q, p)));
  return worst;
}

double TwoBodyTensor::max_hermitian_violation() const {
  double worst = 0.0;
  const std::size_t n = modes_;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          worst = std::max(worst, std::abs((*this)(m, k, p, q) - (*this)(p, q, m, k)));
  return worst;
}

void TwoBodyTensor::validate() const {
  if (const double v = max_exchange_violation(); v > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "TwoBodyTensor: particle-exchange symmetry T4[m,n,p,q] = T4[n,m,q,p] violated by " << v;
    throw InvalidArgument(msg.str());
  }
  if (const double v = max_hermitian_violation(); v > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "TwoBodyTensor: Hermiticity T4[m,n,p,q] = T4[p,q,m,n] violated by " << v;
    throw InvalidArgument(msg.str());
  }
}

void ModeSpace::validate() const {
  if (one_body.modes() == 0) throw InvalidArgument("ModeSpace: at least one mode is required");
  if (two_body.modes() != one_body.modes())
    throw InvalidArgument("ModeSpace: one-body and two-body tensors differ in mode count");
  if (basis.size() != one_body.modes())
    throw InvalidArgument("ModeSpace: mode basis size differs from tensor mode count");
  one_body.validate();
  two_body.validate();
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> unordered_pairs(std::size_t modes) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < modes; ++p)
    for (std::size_t q = p; q < modes; ++q) out.emplace_back(p, q);
  return out;
}

}  // namespace

PairHamiltonian::PairHamiltonian(std::size_t modes, DenseMatrix matrix)
    : modes_(modes), pairs_(unordered_pairs(modes)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != pairs_.size() || matrix_.cols() != pairs_.size())
    throw InvalidArgument("PairHamiltonian: matrix must be M(M+1)/2 square");
  const double asym = matrix_.max_asymmetry();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "PairHamiltonian: matrix is not symmetric (max asymmetry " << asym << ")";
    throw InvalidArgument(msg.str());
  }
}

std::size_t PairHamiltonian::index_of(std::size_t p, std::size_t q) const {
  if (p >= modes_ || q >= modes_) throw InvalidArgument("PairHamiltonian::index_of: mode out of range");
  if (p > q) std::swap(p, q);
  // Rows for p' < p hold M - p' entries each.
  return p * modes_ - (p * (p - 1)) / 2 + (q - p);
}

PairHamiltonian build_pair_hamiltonian(const OneBodyTensor& o, const TwoBodyTensor& t) {
  o.validate();
  t.validate();
  if (o.modes() != t.modes()) throw InvalidArgument("build_pair_hamiltonian: tensor mode counts differ");
  const std::size_t n = o.modes();
  // <ab|O(1)+O(2)+T(1,2)|cd> on ordered product states.
  auto full = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    double v = t(a, b, c, d);
    if (b == d) v += o(a, c);
    if (a == c) v += o(b, d);
    return v;
  };
  const auto pairs = unordered_pairs(n);
  DenseMatrix h(pairs.size(), pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto [m, k] = pairs[r];
    const double sr = m == k ? 0.5 : M_SQRT1_2;
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [p, q] = pairs[c];
      const double sc = p == q ? 0.5 : M_SQRT1_2;
      const double v = full(m, k, p, q) + full(m, k, q, p) + full(k, m, p, q) + full(k, m, q, p);
      h(r, c) = sr * sc * v;
    }
  }
  // Exact symmetrization; the tensors were validated above.
  for (std::size_t r = 0; r < pairs.size(); ++r)
    for (std::size_t c = r + 1; c < pairs.size(); ++c) {
      const double avg = 0.5 * (h(r, c) + h(c, r));
      h(r, c) = avg;
      h(c, r) = avg;
    }
  return PairHamiltonian(n, std::move(h));
}

BoundPolicy BoundPolicy::below_edge(double margin) {
  BoundPolicy p;
  p.kind_ = Kind::kBelowEdge;
  p.margin_ = margin;
  return p;
}

BoundPolicy BoundPolicy::lowest_k(std::size_t k) {
  BoundPolicy p;
  p.kind_ = Kind::kLowestK;
  p.k_ = k;
  return p;
}

double BoundPolicy::margin_for(double edge) const {
  return margin_ >= 0.0 ? margin_ : 1e-8 * std::abs(edge) + 1e-12;
}

CompositeSpectrum::CompositeSpectrum(std::size_t modes, double edge, std::vector<double> energies,
                                     std::vector<std::vector<double>> coefficients)
    : modes_(modes), continuum_edge_(edge), energies_(std::move(energies)), coefficients_(std::move(coefficients)) {
  if (energies_.size() != coefficients_.size())
    throw InvalidArgument("CompositeSpectrum: energy and coefficient counts differ");
  for (const auto& c : coefficients_)
    if (c.size() != modes_ * modes_) throw InvalidArgument("CompositeSpectrum: coefficient tensor must be M x M");
  if (!std::is_sorted(energies_.begin(), energies_.end()))
    throw InvalidArgument("CompositeSpectrum: energies must be ascending");
}

double continuum_edge(const OneBodyTensor& one_body) {
  const auto eig = dense_symmetric_eigen(one_body.matrix());
  return 2.0 * eig.values.front();
}

CompositeSpectrum solve_bound_states(const PairHamiltonian& h, const OneBodyTensor& one_body,
                                     const BoundPolicy& policy) {
  if (h.modes() != one_body.modes())
    throw InvalidArgument("solve_bound_states: pair Hamiltonian and O differ in mode count");
  const std::size_t n = h.modes();
  const double edge = continuum_edge(one_body);
  const auto eig = dense_symmetric_eigen(h.matrix());

  std::size_t count = 0;
  if (policy.kind() == BoundPolicy::Kind::kLowestK) {
    if (policy.k() > h.dimension()) {
      std::ostringstream msg;
      msg << "solve_bound_states: lowest_k(" << policy.k() << ") exceeds pair-subspace dimension "
          << h.dimension();
      throw InvalidArgument(msg.str());
    }
    count = policy.k();
  } else {
    const double cutoff = edge - policy.margin_for(edge);
    while (count < eig.values.size() && eig.values[count] < cutoff) ++count;
  }

  std::vector<double> energies;
  std::vector<std::vector<double>> coefficients;
  for (std::size_t a = 0; a < count; ++a) {
    energies.push_back(eig.values[a]);
    std::vector<double> c(n * n, 0.0);
    for (std::size_t idx = 0; idx < h.dimension(); ++idx) {
      const auto [p, q] = h.pairs()[idx];
      const double v = eig.vectors(idx, a);
      if (p == q) {
        c[p * n + p] = v;
      } else {
        c[p * n + q] = v * M_SQRT1_2;
        c[q * n + p] = v * M_SQRT1_2;
      }
    }
    coefficients.push_back(std::move(c));
  }
  return CompositeSpectrum(n, edge, std::move(energies), std::move(coefficients));
}

double pair_overlap(const CompositeSpectrum& spectrum, std::size_t alpha, std::size_t p, std::size_t q) {
  if (alpha >= spectrum.size() || p >= spectrum.modes() || q >= spectrum.modes()) {
    std::ostringstream msg;
    msg << "pair_overlap: index out of range (alpha=" << alpha << ", p=" << p << ", q=" << q << ")";
    throw InvalidArgument(msg.str());
  }
  return spectrum.coefficient(alpha, p, q);
}

}  // namespace cbsq
