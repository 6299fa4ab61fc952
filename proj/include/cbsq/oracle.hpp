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

#ifndef CBSQ_ORACLE_HPP
#define CBSQ_ORACLE_HPP

// First-quantized verification path. Occupation states are expanded into
// labeled-particle permutation sums, the projected Hamiltonian terms act on
// the labeled factors through projector matching, and matrix elements follow
// from the ideal inner product. Nothing here touches ladder operators, so the
// results are an independent check on the second-quantized builder.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cbsq/fock_basis.hpp"
#include "cbsq/formal_algebra.hpp"
#include "cbsq/mode_space.hpp"
#include "cbsq/terms.hpp"

namespace cbsq {

using ProjectedTermId = TermId;

// Largest constituent number expand_basis_state accepts.
inline constexpr int kOracleMaxConstituents = 6;

// Linear combination of formal products over one label set, like terms merged.
class FormalState {
 public:
  void add(const FormalProduct& product);
  void add(const FormalProduct& product, double scale);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::vector<FormalProduct> products() const;
  // Ideal norm squared.
  double norm2() const;

  friend double inner_product(const FormalState& bra, const FormalState& ket);

 private:
  std::map<std::vector<FormalFactor>, double> terms_;
  std::optional<std::vector<int>> labels_;
};

// L({n}) sum_P over all N! label permutations. Throws InvalidArgument for
// N > kOracleMaxConstituents.
FormalState expand_basis_state(const OccupationState& s);

// Applies one projected term by literal summation over its particle-index
// region; coefficients are memoized per relabeled local configuration.
class ProjectedTermEvaluator {
 public:
  ProjectedTermEvaluator(const ModeSpace& space, const CompositeSpectrum& spectrum);
  ~ProjectedTermEvaluator();
  ProjectedTermEvaluator(const ProjectedTermEvaluator&) = delete;
  ProjectedTermEvaluator& operator=(const ProjectedTermEvaluator&) = delete;

  FormalState apply(ProjectedTermId term, const FormalState& state);

 private:
  struct Cache;
  const ModeSpace& space_;
  const CompositeSpectrum& spectrum_;
  std::unique_ptr<Cache> cache_;
};

FormalState apply_projected_term(ProjectedTermId term, const FormalState& state, const ModeSpace& space,
                                 const CompositeSpectrum& spectrum);

// <expand(bra)| term |expand(ket)>; zero when bra and ket lie in different
// constituent sectors.
double oracle_matrix_element(ProjectedTermId term, const OccupationState& bra, const OccupationState& ket,
                             const ModeSpace& space, const CompositeSpectrum& spectrum);

struct VerificationEntry {
  std::string term;  // a TermId name, or "TOTAL" for the sum of all seven
  int sector = 0;
  OccupationState bra;
  OccupationState ket;
  double sq_value = 0.0;
  double oracle_value = 0.0;
  double abs_diff = 0.0;
};

struct VerificationReport {
  int max_n = 0;
  std::vector<VerificationEntry> entries;
  double max_abs_diff = 0.0;
  std::size_t pairs_checked = 0;
};

// Compares the second-quantized block of every term (and their sum) with the
// oracle for every bra/ket pair in sectors N = 0..max_n.
VerificationReport verify_equivalence(const ModeSpace& space, const CompositeSpectrum& spectrum, int max_n,
                                      int threads = 1);

}  // namespace cbsq

#endif  // CBSQ_ORACLE_HPP
