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

#ifndef CBSQ_FORMAL_ALGEBRA_HPP
#define CBSQ_FORMAL_ALGEBRA_HPP

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cbsq/mode_space.hpp"
#include "cbsq/numerics.hpp"

namespace cbsq {

// psi_mode(label)
struct AtomFactor {
  std::size_t mode;
  int label;
  friend auto operator<=>(const AtomFactor&, const AtomFactor&) = default;
};

// phi_composite(first, second), first < second.
struct PairFactor {
  std::size_t composite;
  int first;
  int second;
  friend auto operator<=>(const PairFactor&, const PairFactor&) = default;
};

using FormalFactor = std::variant<AtomFactor, PairFactor>;

inline FormalFactor atom(std::size_t mode, int label) { return AtomFactor{mode, label}; }
// Label order is irrelevant; stored sorted.
FormalFactor pair(std::size_t composite, int a, int b);

// Weighted tensor product of labeled factors; every particle label appears in
// exactly one factor. Factors are kept sorted by their smallest label.
class FormalProduct {
 public:
  FormalProduct() = default;
  explicit FormalProduct(std::vector<FormalFactor> factors, double weight = 1.0);

  double weight() const { return weight_; }
  void set_weight(double w) { weight_ = w; }
  const std::vector<FormalFactor>& factors() const { return factors_; }
  // Sorted particle labels covered by the product.
  std::vector<int> labels() const;
  std::string to_string() const;

 private:
  std::vector<FormalFactor> factors_;
  double weight_ = 1.0;
};

// Ideal inner product: 1 (times both weights) when the products carry the same
// factor partition with the same modes, 0 for any mismatch, including atom vs
// pair on a label or different pair partitions. Throws InvalidArgument if the
// label sets differ.
double formal_inner_product(const FormalProduct& bra, const FormalProduct& ket);

struct OneBodyTerm {
  int label;
};
// T(first, second): particle `first` occupies the first tensor slot.
struct TwoBodyTerm {
  int first;
  int second;
};
using OperatorTerm = std::variant<OneBodyTerm, TwoBodyTerm>;
using LabeledOperator = std::vector<OperatorTerm>;

// sum_i O(i) + sum_{i<j} T(i,j) over the given labels.
LabeledOperator cluster_hamiltonian(std::span<const int> labels);

// Dense amplitude tensor over an ordered label set; each label carries an
// unbound-mode index. The first label is the most significant digit.
class LabeledTensor {
 public:
  LabeledTensor(std::vector<int> labels, std::size_t modes);

  const std::vector<int>& labels() const { return labels_; }
  std::size_t modes() const { return modes_; }
  std::size_t size() const { return data_.size(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  // Position of `label` in labels(); throws if absent.
  std::size_t position(int label) const;
  std::size_t stride(std::size_t position) const { return strides_[position]; }

 private:
  std::vector<int> labels_;
  std::size_t modes_;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

// Replaces every pair factor by sum_{p,q} c[p,q] psi_p psi_q.
LabeledTensor expand_product(const FormalProduct& product, const CompositeSpectrum& spectrum,
                             std::size_t modes);
LabeledTensor apply_operator(const LabeledOperator& op, const LabeledTensor& ket, const ModeSpace& space);
double contract(const LabeledTensor& bra, const LabeledTensor& ket);

// Exact first-quantized <bra|op|ket>: composites are expanded through their
// coefficient tensors, O and T are contracted on their labels, every spectator
// label is delta-matched. No idealization is applied here.
double labeled_matrix_element(const FormalProduct& bra, const LabeledOperator& op, const FormalProduct& ket,
                              const ModeSpace& space, const CompositeSpectrum& spectrum);

// Batched form: entry (b, k) = <bras[b]|op|kets[k]>.
DenseMatrix labeled_matrix_elements(std::span<const FormalProduct> bras, const LabeledOperator& op,
                                    std::span<const FormalProduct> kets, const ModeSpace& space,
                                    const CompositeSpectrum& spectrum);

}  // namespace cbsq

#endif  // CBSQ_FORMAL_ALGEBRA_HPP
