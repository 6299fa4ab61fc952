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

#ifndef CBSQ_TESTS_SUPPORT_HPP
#define CBSQ_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "cbsq/mode_space.hpp"
#include "cbsq/models.hpp"
#include "cbsq/numerics.hpp"

namespace cbsq::test {

inline double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  DenseMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) m(r, c) = m(c, r) = 2.0 * uniform(g) - 1.0;
  return m;
}

// Orthogonal matrix from Gram-Schmidt on random columns.
inline DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  DenseMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * uniform(g) - 1.0;
    for (std::size_t k = 0; k < j; ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += v[i] * q(i, k);
      for (std::size_t i = 0; i < n; ++i) v[i] -= d * q(i, k);
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

// O -> Q^T O Q, T4 -> sum Q Q Q Q T4 applied consistently.
inline ModeSpace rotate(const ModeSpace& s, const DenseMatrix& q) {
  const std::size_t m = s.modes();
  const DenseMatrix o = q.transpose() * s.one_body.matrix() * q;
  TwoBodyTensor t(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          double acc = 0.0;
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
              for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                  acc += q(i, a) * q(j, b) * q(k, c) * q(l, d) * s.two_body(i, j, k, l);
          t(a, b, c, d) = acc;
        }
  return ModeSpace{ModeBasis::numbered(m), OneBodyTensor::from_matrix(o), std::move(t)};
}

// Two-site model written directly in the site basis.
inline ModeSpace two_site_site_basis(double t, double U) {
  OneBodyTensor o(2);
  o(0, 1) = o(1, 0) = -t;
  TwoBodyTensor t4(2);
  t4(0, 0, 0, 0) = U;
  t4(1, 1, 1, 1) = U;
  return ModeSpace{ModeBasis::numbered(2), std::move(o), std::move(t4)};
}

inline CompositeSpectrum spectrum_of(const ModeSpace& s, const BoundPolicy& policy = BoundPolicy::below_edge()) {
  return solve_bound_states(build_pair_hamiltonian(s.one_body, s.two_body), s.one_body, policy);
}

}  // namespace cbsq::test

#endif  // CBSQ_TESTS_SUPPORT_HPP
