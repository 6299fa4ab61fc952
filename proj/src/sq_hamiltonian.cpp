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

#include "cbsq/sq_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "cbsq/error.hpp"
#include "cbsq/formal_algebra.hpp"
#include "parallel.hpp"

namespace cbsq {

double two_body_element(const ModeSpace& space, std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
  const std::size_t modes = space.modes();
  if (m >= modes || n >= modes || p >= modes || q >= modes)
    throw InvalidArgument("two_body_element: mode index out of range");
  // The ket places p on particle 2 and q on particle 1.
  return space.two_body(m, n, q, p);
}

namespace {

constexpr ModeRef atom_mode(std::size_t m) { return {Species::kAtom, m}; }
constexpr ModeRef molecule_mode(std::size_t a) { return {Species::kMolecule, a}; }

using Products = std::vector<FormalProduct>;

Products products_over(std::size_t outer, std::size_t inner,
                       const std::function<FormalProduct(std::size_t, std::size_t)>& make) {
  Products out;
  out.reserve(outer * inner);
  for (std::size_t i = 0; i < outer; ++i)
    for (std::size_t j = 0; j < inner; ++j) out.push_back(make(i, j));
  return out;
}

void push(std::vector<OperatorString>& out, double coefficient, std::vector<ModeRef> creators,
          std::vector<ModeRef> annihilators) {
  if (coefficient == 0.0) return;
  out.push_back({coefficient, std::move(creators), std::move(annihilators)});
}

}  // namespace

std::vector<OperatorString> term_operator_strings(TermId term, const ModeSpace& space,
                                                  const CompositeSpectrum& spectrum) {
  const std::size_t M = space.modes();
  const std::size_t A = spectrum.size();
  if (spectrum.modes() != M && A > 0)
    throw InvalidArgument("term_operator_strings: spectrum and mode space differ in mode count");

  const std::array<int, 2> l12{1, 2};
  const std::array<int, 3> l123{1, 2, 3};
  const std::array<int, 4> l1234{1, 2, 3, 4};
  const LabeledOperator h12 = cluster_hamiltonian(l12);
  const LabeledOperator h123 = cluster_hamiltonian(l123);
  const LabeledOperator h1234 = cluster_hamiltonian(l1234);
  auto elements = [&](const Products& bras, const LabeledOperator& op, const Products& kets) {
    return labeled_matrix_elements(bras, op, kets, space, spectrum);
  };

  std::vector<OperatorString> out;
  switch (term) {
    case TermId::kSS: {
      // a+_n <psi_n(1)|O(1)|psi_m(1)> a_m
      const auto bras = products_over(M, 1, [](auto n, auto) { return FormalProduct({atom(n, 1)}); });
      const auto kets = products_over(M, 1, [](auto m, auto) { return FormalProduct({atom(m, 1)}); });
      const auto c = elements(bras, {OneBodyTerm{1}}, kets);
      for (std::size_t n = 0; n < M; ++n)
        for (std::size_t m = 0; m < M; ++m) push(out, c(n, m), {atom_mode(n)}, {atom_mode(m)});
      break;
    }
    case TermId::kSSSS: {
      // 1/2 a+_m a+_n <psi_m(1) psi_n(2)|T(1,2)|psi_p(2) psi_q(1)> a_p a_q
      const auto bras =
          products_over(M, M, [](auto m, auto n) { return FormalProduct({atom(m, 1), atom(n, 2)}); });
      const auto kets =
          products_over(M, M, [](auto p, auto q) { return FormalProduct({atom(p, 2), atom(q, 1)}); });
      const auto c = elements(bras, {TwoBodyTerm{1, 2}}, kets);
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < M; ++n)
          for (std::size_t p = 0; p < M; ++p)
            for (std::size_t q = 0; q < M; ++q)
              push(out, 0.5 * c(m * M + n, p * M + q), {atom_mode(m), atom_mode(n)},
                   {atom_mode(p), atom_mode(q)});
      break;
    }
    case TermId::kCC: {
      // a+_a <phi_a(1,2)|O(1)+O(2)+T(1,2)|phi_b(1,2)> a_b
      if (A == 0) break;
      const auto pairs = products_over(A, 1, [](auto a, auto) { return FormalProduct({pair(a, 1, 2)}); });
      const auto c = elements(pairs, h12, pairs);
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t b = 0; b < A; ++b) push(out, c(a, b), {molecule_mode(a)}, {molecule_mode(b)});
      break;
    }
    case TermId::kCSS: {
      // 1/sqrt2 a+_a <phi_a(1,2)|H(1,2)|psi_m(2) psi_n(1)> a_m a_n
      if (A == 0) break;
      const auto bras = products_over(A, 1, [](auto a, auto) { return FormalProduct({pair(a, 1, 2)}); });
      const auto kets =
          products_over(M, M, [](auto m, auto n) { return FormalProduct({atom(m, 2), atom(n, 1)}); });
      const auto c = elements(bras, h12, kets);
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t m = 0; m < M; ++m)
          for (std::size_t n = 0; n < M; ++n)
            push(out, M_SQRT1_2 * c(a, m * M + n), {molecule_mode(a)}, {atom_mode(m), atom_mode(n)});
      break;
    }
    case TermId::kSSC: {
      // 1/sqrt2 a+_m a+_n <psi_m(1) psi_n(2)|H(1,2)|phi_a(1,2)> a_a
      if (A == 0) break;
      const auto bras =
          products_over(M, M, [](auto m, auto n) { return FormalProduct({atom(m, 1), atom(n, 2)}); });
      const auto kets = products_over(A, 1, [](auto a, auto) { return FormalProduct({pair(a, 1, 2)}); });
      const auto c = elements(bras, h12, kets);
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < M; ++n)
          for (std::size_t a = 0; a < A; ++a)
            push(out, M_SQRT1_2 * c(m * M + n, a), {atom_mode(m), atom_mode(n)}, {molecule_mode(a)});
      break;
    }
    case TermId::kSCSC: {
      // a+_m a+_a [direct + two exchange bra-kets] a_b a_n
      if (A == 0) break;
      const auto bras =
          products_over(M, A, [](auto m, auto a) { return FormalProduct({atom(m, 1), pair(a, 2, 3)}); });
      const auto direct_kets =
          products_over(A, M, [](auto b, auto n) { return FormalProduct({pair(b, 2, 3), atom(n, 1)}); });
      const auto swap2_kets =
          products_over(A, M, [](auto b, auto n) { return FormalProduct({pair(b, 1, 3), atom(n, 2)}); });
      const auto swap3_kets =
          products_over(A, M, [](auto b, auto n) { return FormalProduct({pair(b, 1, 2), atom(n, 3)}); });
      const auto direct = elements(bras, {TwoBodyTerm{1, 2}, TwoBodyTerm{1, 3}}, direct_kets);
      const auto swap2 = elements(bras, h123, swap2_kets);
      const auto swap3 = elements(bras, h123, swap3_kets);
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t a = 0; a < A; ++a)
          for (std::size_t b = 0; b < A; ++b)
            for (std::size_t n = 0; n < M; ++n) {
              const std::size_t r = m * A + a;
              const std::size_t c = b * M + n;
              push(out, direct(r, c) + swap2(r, c) + swap3(r, c), {atom_mode(m), molecule_mode(a)},
                   {molecule_mode(b), atom_mode(n)});
            }
      break;
    }
    case TermId::kCCCC: {
      // 1/2 a+_a a+_b [direct + two exchange bra-kets] a_t a_th
      if (A == 0) break;
      const auto bras =
          products_over(A, A, [](auto a, auto b) { return FormalProduct({pair(a, 1, 2), pair(b, 3, 4)}); });
      const auto direct_kets =
          products_over(A, A, [](auto th, auto t) { return FormalProduct({pair(th, 3, 4), pair(t, 1, 2)}); });
      const auto cross_kets =
          products_over(A, A, [](auto th, auto t) { return FormalProduct({pair(th, 2, 4), pair(t, 1, 3)}); });
      const auto twist_kets =
          products_over(A, A, [](auto th, auto t) { return FormalProduct({pair(th, 2, 3), pair(t, 1, 4)}); });
      const LabeledOperator inter{TwoBodyTerm{1, 3}, TwoBodyTerm{1, 4}, TwoBodyTerm{2, 3}, TwoBodyTerm{2, 4}};
      const auto direct = elements(bras, inter, direct_kets);
      const auto cross = elements(bras, h1234, cross_kets);
      const auto twist = elements(bras, h1234, twist_kets);
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t b = 0; b < A; ++b)
          for (std::size_t th = 0; th < A; ++th)
            for (std::size_t t = 0; t < A; ++t) {
              const std::size_t r = a * A + b;
              const std::size_t c = th * A + t;
              push(out, 0.5 * (direct(r, c) + cross(r, c) + twist(r, c)), {molecule_mode(a), molecule_mode(b)},
                   {molecule_mode(t), molecule_mode(th)});
            }
      break;
    }
  }
  return out;
}

namespace {

// Applies one string to `ket`; returns false if any ladder step vanishes.
bool apply_string(const OperatorString& s, const OccupationState& ket, double& amplitude, OccupationState& out) {
  OccupationState state = ket;
  double c = s.coefficient;
  for (auto it = s.annihilators.rbegin(); it != s.annihilators.rend(); ++it) {
    auto r = apply_ladder(state, *it, Ladder::kAnnihilate);
    if (!r.state) return false;
    c *= r.coefficient;
    state = std::move(*r.state);
  }
  for (auto it = s.creators.rbegin(); it != s.creators.rend(); ++it) {
    auto r = apply_ladder(state, *it, Ladder::kCreate);
    c *= r.coefficient;
    state = std::move(*r.state);
  }
  amplitude = c;
  out = std::move(state);
  return true;
}

}  // namespace

SparseMatrix build_term(TermId term, const SectorBasis& basis, const ModeSpace& space,
                        const CompositeSpectrum& spectrum, int threads) {
  if (basis.modes() != space.modes() || basis.composites() != spectrum.size()) {
    std::ostringstream msg;
    msg << "build_term: basis shape (M=" << basis.modes() << ", A=" << basis.composites()
        << ") does not match mode space (M=" << space.modes() << ") and spectrum (A=" << spectrum.size() << ")";
    throw InvalidArgument(msg.str());
  }
  const auto strings = term_operator_strings(term, space, spectrum);
  std::vector<std::vector<Triplet>> columns(basis.size());
  detail::parallel_for(basis.size(), threads, [&](std::size_t col) {
    std::map<std::size_t, double> acc;
    OccupationState image;
    double amplitude = 0.0;
    for (const auto& s : strings) {
      if (!apply_string(s, basis[col], amplitude, image)) continue;
      const auto row = basis.find(image);
      if (!row) {
        throw InvalidArgument("build_term: basis is not closed under " + std::string(term_name(term)) +
                              "; image " + image.to_string() + " of " + basis[col].to_string() + " missing");
      }
      acc[*row] += amplitude;
    }
    for (const auto& [row, v] : acc) columns[col].push_back({row, col, v});
  });
  std::vector<Triplet> all;
  for (auto& c : columns) all.insert(all.end(), c.begin(), c.end());
  return SparseMatrix::from_triplets(basis.size(), std::move(all));
}

SymmetryReport check_symmetry(const SparseMatrix& m, double tolerance, std::size_t max_reported) {
  SymmetryReport report;
  for (const auto& t : m.triplets()) {
    const double diff = t.value - m.at(t.col, t.row);
    report.max_asymmetry = std::max(report.max_asymmetry, std::abs(diff));
    if (std::abs(diff) > tolerance && report.offending.size() < max_reported)
      report.offending.push_back({t.row, t.col, diff});
  }
  // Entries stored only below the diagonal mirror are caught from the other side.
  const auto tt = m.transpose();
  for (const auto& t : tt.triplets()) {
    const double diff = m.at(t.row, t.col) - t.value;
    report.max_asymmetry = std::max(report.max_asymmetry, std::abs(diff));
  }
  return report;
}

SparseHamiltonian::SparseHamiltonian(SectorBasis basis, std::array<SparseMatrix, 7> terms)
    : basis_(std::move(basis)), terms_(std::move(terms)), total_(basis_.size()) {
  std::vector<Triplet> all;
  for (const auto& t : terms_) {
    if (t.dimension() != basis_.size()) throw InvalidArgument("SparseHamiltonian: block dimension mismatch");
    const auto tr = t.triplets();
    all.insert(all.end(), tr.begin(), tr.end());
  }
  total_ = SparseMatrix::from_triplets(basis_.size(), std::move(all));
  symmetry_ = check_symmetry(total_);
}

SparseHamiltonian assemble_hamiltonian(const SectorBasis& basis, const ModeSpace& space,
                                       const CompositeSpectrum& spectrum, int threads) {
  std::array<SparseMatrix, 7> blocks;
  for (TermId t : kAllTerms) blocks[term_index(t)] = build_term(t, basis, space, spectrum, threads);
  return SparseHamiltonian(basis, std::move(blocks));
}

}  // namespace cbsq
