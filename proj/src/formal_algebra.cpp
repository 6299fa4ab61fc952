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

#include "cbsq/formal_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cbsq/error.hpp"

namespace cbsq {

namespace {

int smallest_label(const FormalFactor& f) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, AtomFactor>)
          return x.label;
        else
          return x.first;
      },
      f);
}

}  // namespace

FormalFactor pair(std::size_t composite, int a, int b) {
  if (a == b) throw InvalidArgument("pair factor needs two distinct particle labels");
  return PairFactor{composite, std::min(a, b), std::max(a, b)};
}

FormalProduct::FormalProduct(std::vector<FormalFactor> factors, double weight)
    : factors_(std::move(factors)), weight_(weight) {
  std::set<int> seen;
  for (auto& f : factors_) {
    if (auto* p = std::get_if<PairFactor>(&f)) {
      if (p->first == p->second) throw InvalidArgument("FormalProduct: pair labels must differ");
      if (p->first > p->second) std::swap(p->first, p->second);
      if (!seen.insert(p->first).second || !seen.insert(p->second).second)
        throw InvalidArgument("FormalProduct: particle label used twice");
    } else {
      if (!seen.insert(std::get<AtomFactor>(f).label).second)
        throw InvalidArgument("FormalProduct: particle label used twice");
    }
  }
  std::sort(factors_.begin(), factors_.end(),
            [](const FormalFactor& a, const FormalFactor& b) { return smallest_label(a) < smallest_label(b); });
}

std::vector<int> FormalProduct::labels() const {
  std::vector<int> out;
  for (const auto& f : factors_) {
    if (const auto* p = std::get_if<PairFactor>(&f)) {
      out.push_back(p->first);
      out.push_back(p->second);
    } else {
      out.push_back(std::get<AtomFactor>(f).label);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FormalProduct::to_string() const {
  std::ostringstream out;
  out << weight_ << " *";
  for (const auto& f : factors_) {
    if (const auto* p = std::get_if<PairFactor>(&f))
      out << " phi" << p->composite << "(" << p->first << "," << p->second << ")";
    else
      out << " psi" << std::get<AtomFactor>(f).mode << "(" << std::get<AtomFactor>(f).label << ")";
  }
  return out.str();
}

double formal_inner_product(const FormalProduct& bra, const FormalProduct& ket) {
  if (bra.labels() != ket.labels()) throw InvalidArgument("formal_inner_product: label sets differ");
  return bra.factors() == ket.factors() ? bra.weight() * ket.weight() : 0.0;
}

LabeledOperator cluster_hamiltonian(std::span<const int> labels) {
  LabeledOperator op;
  for (int l : labels) op.emplace_back(OneBodyTerm{l});
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) op.emplace_back(TwoBodyTerm{labels[a], labels[b]});
  return op;
}

LabeledTensor::LabeledTensor(std::vector<int> labels, std::size_t modes)
    : labels_(std::move(labels)), modes_(modes), strides_(labels_.size(), 1) {
  std::size_t total = 1;
  for (std::size_t p = labels_.size(); p-- > 0;) {
    strides_[p] = total;
    total *= modes_;
  }
  data_.assign(total, 0.0);
}

std::size_t LabeledTensor::position(int label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidArgument("LabeledTensor: operator acts on an absent label");
  return static_cast<std::size_t>(it - labels_.begin());
}

LabeledTensor expand_product(const FormalProduct& product, const CompositeSpectrum& spectrum, std::size_t modes) {
  LabeledTensor t(product.labels(), modes);
  // Seed with the weight at index 0, then fold factors in one at a time.
  std::vector<std::pair<std::size_t, double>> partial{{0, product.weight()}};
  for (const auto& f : product.factors()) {
    std::vector<std::pair<std::size_t, double>> next;
    if (const auto* a = std::get_if<AtomFactor>(&f)) {
      if (a->mode >= modes) throw InvalidArgument("expand_product: atom mode out of range");
      const std::size_t off = a->mode * t.stride(t.position(a->label));
      for (const auto& [idx, w] : partial) next.emplace_back(idx + off, w);
    } else {
      const auto& p = std::get<PairFactor>(f);
      if (p.composite >= spectrum.size()) throw InvalidArgument("expand_product: composite index out of range");
      if (spectrum.modes() != modes) throw InvalidArgument("expand_product: spectrum mode count mismatch");
      const std::size_t s1 = t.stride(t.position(p.first));
      const std::size_t s2 = t.stride(t.position(p.second));
      for (const auto& [idx, w] : partial)
        for (std::size_t x = 0; x < modes; ++x)
          for (std::size_t y = 0; y < modes; ++y) {
            const double c = spectrum.coefficient(p.composite, x, y);
            if (c != 0.0) next.emplace_back(idx + x * s1 + y * s2, w * c);
          }
    }
    partial = std::move(next);
  }
  for (const auto& [idx, w] : partial) t[idx] += w;
  return t;
}

LabeledTensor apply_operator(const LabeledOperator& op, const LabeledTensor& ket, const ModeSpace& space) {
  const std::size_t modes = ket.modes();
  if (space.modes() != modes) throw InvalidArgument("apply_operator: mode count mismatch");
  LabeledTensor out(ket.labels(), modes);
  const auto& o = space.one_body;
  const auto& t = space.two_body;
  for (const auto& term : op) {
    if (const auto* one = std::get_if<OneBodyTerm>(&term)) {
      const std::size_t s = ket.stride(ket.position(one->label));
      for (std::size_t idx = 0; idx < out.size(); ++idx) {
        const std::size_t x = (idx / s) % modes;
        const std::size_t base = idx - x * s;
        double acc = 0.0;
        for (std::size_t y = 0; y < modes; ++y) acc += o(x, y) * ket[base + y * s];
        out[idx] += acc;
      }
    } else {
      const auto& two = std::get<TwoBodyTerm>(term);
      if (two.first == two.second) throw InvalidArgument("apply_operator: T needs two distinct labels");
      const std::size_t s1 = ket.stride(ket.position(two.first));
      const std::size_t s2 = ket.stride(ket.position(two.second));
      for (std::size_t idx = 0; idx < out.size(); ++idx) {
        const std::size_t x1 = (idx / s1) % modes;
        const std::size_t x2 = (idx / s2) % modes;
        const std::size_t base = idx - x1 * s1 - x2 * s2;
        double acc = 0.0;
        for (std::size_t y1 = 0; y1 < modes; ++y1)
          for (std::size_t y2 = 0; y2 < modes; ++y2) acc += t(x1, x2, y1, y2) * ket[base + y1 * s1 + y2 * s2];
        out[idx] += acc;
      }
    }
  }
  return out;
}

double contract(const LabeledTensor& bra, const LabeledTensor& ket) {
  if (bra.labels() != ket.labels() || bra.modes() != ket.modes())
    throw InvalidArgument("contract: label sets differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) acc += bra[i] * ket[i];
  return acc;
}

double labeled_matrix_element(const FormalProduct& bra, const LabeledOperator& op, const FormalProduct& ket,
                              const ModeSpace& space, const CompositeSpectrum& spectrum) {
  if (bra.labels() != ket.labels()) throw InvalidArgument("labeled_matrix_element: label sets differ");
  const auto ket_t = expand_product(ket, spectrum, space.modes());
  const auto bra_t = expand_product(bra, spectrum, space.modes());
  return contract(bra_t, apply_operator(op, ket_t, space));
}

DenseMatrix labeled_matrix_elements(std::span<const FormalProduct> bras, const LabeledOperator& op,
                                    std::span<const FormalProduct> kets, const ModeSpace& space,
                                    const CompositeSpectrum& spectrum) {
  DenseMatrix out(bras.size(), kets.size());
  std::vector<LabeledTensor> bra_t;
  bra_t.reserve(bras.size());
  for (const auto& b : bras) bra_t.push_back(expand_product(b, spectrum, space.modes()));
  for (std::size_t k = 0; k < kets.size(); ++k) {
    const auto applied = apply_operator(op, expand_product(kets[k], spectrum, space.modes()), space);
    for (std::size_t b = 0; b < bras.size(); ++b) out(b, k) = contract(bra_t[b], applied);
  }
  return out;
}

}  // namespace cbsq
