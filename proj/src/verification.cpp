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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cbsq/error.hpp"
#include "cbsq/oracle.hpp"
#include "cbsq/sq_hamiltonian.hpp"
#include "parallel.hpp"

namespace cbsq {

VerificationReport verify_equivalence(const ModeSpace& space, const CompositeSpectrum& spectrum, int max_n,
                                      int threads) {
  if (max_n < 0 || max_n > kOracleMaxConstituents)
    throw InvalidArgument("verify_equivalence: max_n must lie in [0, " + std::to_string(kOracleMaxConstituents) +
                          "]");
  VerificationReport report;
  report.max_n = max_n;
  const std::size_t modes = space.modes();
  const std::size_t composites = spectrum.size();

  for (int n = 0; n <= max_n; ++n) {
    const SectorBasis basis = enumerate_sector(n, modes, composites);
    const std::size_t dim = basis.size();
    std::array<SparseMatrix, 7> sq{SparseMatrix(dim), SparseMatrix(dim), SparseMatrix(dim), SparseMatrix(dim),
                                   SparseMatrix(dim), SparseMatrix(dim), SparseMatrix(dim)};
    for (TermId t : kAllTerms) sq[term_index(t)] = build_term(t, basis, space, spectrum, threads);

    std::vector<FormalState> expanded(dim);
    for (std::size_t k = 0; k < dim; ++k) expanded[k] = expand_basis_state(basis[k]);

    // oracle[t][bra * dim + ket]; slot 7 holds the sum over terms.
    std::array<std::vector<double>, 8> oracle;
    for (auto& o : oracle) o.assign(dim * dim, 0.0);

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(dim, std::max(threads, 1)));
    detail::parallel_for(workers, static_cast<int>(workers), [&](std::size_t w) {
      ProjectedTermEvaluator evaluator(space, spectrum);
      for (std::size_t ket = w; ket < dim; ket += workers) {
        FormalState total;
        for (TermId t : kAllTerms) {
          const FormalState applied = evaluator.apply(t, expanded[ket]);
          for (const auto& p : applied.products()) total.add(p);
          for (std::size_t bra = 0; bra < dim; ++bra)
            oracle[term_index(t)][bra * dim + ket] = inner_product(expanded[bra], applied);
        }
        for (std::size_t bra = 0; bra < dim; ++bra) oracle[7][bra * dim + ket] = inner_product(expanded[bra], total);
      }
    });

    auto record = [&](const std::string& name, std::size_t slot, auto sq_at) {
      for (std::size_t bra = 0; bra < dim; ++bra)
        for (std::size_t ket = 0; ket < dim; ++ket) {
          VerificationEntry e;
          e.term = name;
          e.sector = n;
          e.bra = basis[bra];
          e.ket = basis[ket];
          e.sq_value = sq_at(bra, ket);
          e.oracle_value = oracle[slot][bra * dim + ket];
          e.abs_diff = std::abs(e.sq_value - e.oracle_value);
          report.max_abs_diff = std::max(report.max_abs_diff, e.abs_diff);
          ++report.pairs_checked;
          report.entries.push_back(std::move(e));
        }
    };
    for (TermId t : kAllTerms)
      record(std::string(term_name(t)), term_index(t),
             [&](std::size_t r, std::size_t c) { return sq[term_index(t)].at(r, c); });
    SparseMatrix total(dim);
    for (const auto& m : sq) total = total + m;
    record("TOTAL", 7, [&](std::size_t r, std::size_t c) { return total.at(r, c); });
  }
  return report;
}

}  // namespace cbsq
