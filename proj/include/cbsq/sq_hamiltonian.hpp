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

#ifndef CBSQ_SQ_HAMILTONIAN_HPP
#define CBSQ_SQ_HAMILTONIAN_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "cbsq/fock_basis.hpp"
#include "cbsq/mode_space.hpp"
#include "cbsq/numerics.hpp"
#include "cbsq/terms.hpp"

namespace cbsq {

// <psi_m(1) psi_n(2)|T(1,2)|psi_p(2) psi_q(1)> = T4[m,n,q,p].
double two_body_element(const ModeSpace& space, std::size_t m, std::size_t n, std::size_t p, std::size_t q);

// coefficient * creators[0] creators[1] ... annihilators[0] annihilators[1] ...
struct OperatorString {
  double coefficient;
  std::vector<ModeRef> creators;
  std::vector<ModeRef> annihilators;
};

// Normal-ordered strings of one term with their prefactors and bra-ket
// coefficients; strings whose coefficient is exactly zero are omitted.
std::vector<OperatorString> term_operator_strings(TermId term, const ModeSpace& space,
                                                  const CompositeSpectrum& spectrum);

// Matrix of one term on `basis`, assembled column by column: each ket is hit
// by annihilators right to left, then creators right to left. `threads` > 1
// splits the columns; the result does not depend on it.
SparseMatrix build_term(TermId term, const SectorBasis& basis, const ModeSpace& space,
                        const CompositeSpectrum& spectrum, int threads = 1);

struct SymmetryReport {
  double max_asymmetry = 0.0;
  // Entries (row, col, H[row,col] - H[col,row]) above the tolerance, capped.
  std::vector<Triplet> offending;
};

SymmetryReport check_symmetry(const SparseMatrix& m, double tolerance = kSymmetryTolerance,
                              std::size_t max_reported = 16);

class SparseHamiltonian {
 public:
  SparseHamiltonian(SectorBasis basis, std::array<SparseMatrix, 7> terms);

  const SectorBasis& basis() const { return basis_; }
  const SparseMatrix& term(TermId t) const { return terms_[term_index(t)]; }
  const SparseMatrix& total() const { return total_; }
  const SymmetryReport& symmetry() const { return symmetry_; }

 private:
  SectorBasis basis_;
  std::array<SparseMatrix, 7> terms_;
  SparseMatrix total_;
  SymmetryReport symmetry_;
};

// Sum of all seven term blocks. Symmetry of the sum is measured and recorded,
// not assumed.
SparseHamiltonian assemble_hamiltonian(const SectorBasis& basis, const ModeSpace& space,
                                       const CompositeSpectrum& spectrum, int threads = 1);

}  // namespace cbsq

#endif  // CBSQ_SQ_HAMILTONIAN_HPP
