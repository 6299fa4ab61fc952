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
#include <string>

#include "cbsq/error.hpp"
#include "cbsq/oracle.hpp"
#include "cbsq/sq_hamiltonian.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cbsq;

TEST_CASE("basis state expansion examples") {
  const auto one = expand_basis_state(OccupationState({0, 1}, {}));
  REQUIRE(one.size() == 1);
  CHECK(one.products()[0].weight() == 1.0);
  CHECK(std::get<AtomFactor>(one.products()[0].factors()[0]).mode == 1);

  const auto mol = expand_basis_state(OccupationState({0}, {1}));
  REQUIRE(mol.size() == 1);
  CHECK(mol.products()[0].weight() == doctest::Approx(1.0).epsilon(1e-15));

  const auto pq = expand_basis_state(OccupationState({1, 1}, {}));
  REQUIRE(pq.size() == 2);
  for (const auto& p : pq.products()) CHECK(p.weight() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  CHECK(expand_basis_state(OccupationState::vacuum(2, 1)).size() == 1);
}

TEST_CASE("expanded basis states are orthonormal") {
  for (int n = 0; n <= 4; ++n) {
    const auto basis = enumerate_sector(n, 2, 2);
    std::vector<FormalState> e;
    for (const auto& s : basis.states()) e.push_back(expand_basis_state(s));
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j)
        CHECK(std::abs(inner_product(e[i], e[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("expansion guard reports the cost") {
  try {
    expand_basis_state(OccupationState({7}, {}));
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("5040") != std::string::npos);
  }
  CHECK_NOTHROW(expand_basis_state(OccupationState({2}, {2})));
}

TEST_CASE("projected terms on small states") {
  const auto s = random_model(3, 31);
  const auto spec = test::spectrum_of(s, BoundPolicy::lowest_k(2));

  FormalState single;
  single.add(FormalProduct({atom(1, 1)}));
  const auto ss = apply_projected_term(TermId::kSS, single, s, spec);
  REQUIRE(ss.size() == 3);
  for (const auto& p : ss.products()) {
    const auto n = std::get<AtomFactor>(p.factors()[0]).mode;
    CHECK(p.weight() == doctest::Approx(s.one_body(n, 1)).epsilon(1e-14));
  }
  for (TermId t : {TermId::kSSSS, TermId::kCC, TermId::kCSS, TermId::kSSC, TermId::kSCSC, TermId::kCCCC})
    CHECK(apply_projected_term(t, single, s, spec).empty());

  const auto vacuum = expand_basis_state(OccupationState::vacuum(3, 2));
  for (TermId t : kAllTerms) CHECK(apply_projected_term(t, vacuum, s, spec).empty());

  // Two distinct atoms map onto composites only.
  const auto css = apply_projected_term(TermId::kCSS, expand_basis_state(OccupationState({1, 0, 1}, {0, 0})), s, spec);
  REQUIRE(css.size() == 2);
  for (const auto& p : css.products()) CHECK(std::holds_alternative<PairFactor>(p.factors()[0]));
}

TEST_CASE("oracle CSS elements") {
  const auto s = random_model(3, 47);
  const auto spec = test::spectrum_of(s, BoundPolicy::lowest_k(2));
  for (std::size_t b = 0; b < 2; ++b) {
    std::vector<std::uint8_t> mols(2, 0);
    mols[b] = 1;
    const OccupationState bra({0, 0, 0}, mols);
    const double pq = oracle_matrix_element(TermId::kCSS, bra, OccupationState({1, 0, 1}, {0, 0}), s, spec);
    CHECK(std::abs(pq - std::sqrt(2.0) * spec.energy(b) * spec.coefficient(b, 0, 2)) <= 1e-10);
    const double pp = oracle_matrix_element(TermId::kCSS, bra, OccupationState({0, 2, 0}, {0, 0}), s, spec);
    CHECK(std::abs(pp - spec.energy(b) * spec.coefficient(b, 1, 1)) <= 1e-10);
  }
  CHECK(oracle_matrix_element(TermId::kSS, OccupationState({1, 0, 0}, {0, 0}), OccupationState({2, 0, 0}, {0, 0}), s,
                              spec) == 0.0);
}

TEST_CASE("oracle and second-quantized blocks agree on every term") {
  const auto s = random_model(3, 2718);
  const auto spec = test::spectrum_of(s, BoundPolicy::lowest_k(2));
  const auto report = verify_equivalence(s, spec, 4, 2);
  CHECK(report.max_abs_diff <= 1e-10);
  // 7 terms plus their sum over every bra/ket pair of sectors 0..4.
  std::size_t expected = 0;
  for (int n = 0; n <= 4; ++n) expected += 8 * sector_dimension(n, 3, 2) * sector_dimension(n, 3, 2);
  CHECK(report.pairs_checked == expected);
  double largest = 0.0;
  for (const auto& e : report.entries)
    if (e.term == "SCSC" || e.term == "CCCC") largest = std::max(largest, std::abs(e.oracle_value));
  CHECK(largest > 1e-3);  // the interaction terms are genuinely exercised
}

TEST_CASE("summed projected terms reproduce the assembled hamiltonian") {
  const auto s = build_ring_model(3, 1.0, -7.0);
  const auto spec = test::spectrum_of(s);
  const auto basis = enumerate_sector(4, 3, spec.size());
  const auto h = assemble_hamiltonian(basis, s, spec);
  ProjectedTermEvaluator evaluator(s, spec);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    FormalState total;
    for (TermId t : kAllTerms)
      for (const auto& p : evaluator.apply(t, expand_basis_state(basis[k])).products()) total.add(p);
    for (std::size_t b = 0; b < basis.size(); ++b)
      CHECK(std::abs(inner_product(expand_basis_state(basis[b]), total) - h.total().at(b, k)) <= 1e-10);
  }
}

TEST_CASE("formal states reject mixed label sets") {
  FormalState a;
  a.add(FormalProduct({atom(0, 1)}));
  CHECK_THROWS_AS(a.add(FormalProduct({atom(0, 2)})), InvalidArgument);
  FormalState b;
  b.add(FormalProduct({atom(0, 1), atom(0, 2)}));
  CHECK_THROWS_AS(inner_product(a, b), InvalidArgument);
  CHECK(inner_product(a, FormalState()) == 0.0);
}
