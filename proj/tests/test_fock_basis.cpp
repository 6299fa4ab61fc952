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
#include <cmath>
#include <set>

#include "cbsq/fock_basis.hpp"
#include "doctest.h"

using namespace cbsq;

namespace {

using Counts = std::vector<std::uint8_t>;

// Every occupation vector with entries in [0, cap], by odometer.
std::vector<Counts> all_vectors(std::size_t length, int cap) {
  std::vector<Counts> out;
  Counts v(length, 0);
  while (true) {
    out.push_back(v);
    std::size_t d = 0;
    while (d < length && ++v[d] > cap) v[d++] = 0;
    if (d == length) break;
  }
  return out;
}

std::size_t brute_force_count(int n, std::size_t m, std::size_t a) {
  std::size_t count = 0;
  for (const auto& atoms : all_vectors(m, n))
    for (const auto& mols : all_vectors(a, n / 2)) {
      int total = 0;
      for (int x : atoms) total += x;
      for (int x : mols) total += 2 * x;
      if (total == n) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("sector enumeration examples") {
  const auto vac = enumerate_sector(0, 3, 2);
  REQUIRE(vac.size() == 1);
  CHECK(vac[0] == OccupationState::vacuum(3, 2));

  const auto two = enumerate_sector(2, 2, 1);
  REQUIRE(two.size() == 4);
  CHECK(two[0] == OccupationState({2, 0}, {0}));
  CHECK(two[1] == OccupationState({1, 1}, {0}));
  CHECK(two[2] == OccupationState({0, 2}, {0}));
  CHECK(two[3] == OccupationState({0, 0}, {1}));

  const auto three = enumerate_sector(3, 1, 1);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == OccupationState({3}, {0}));
  CHECK(three[1] == OccupationState({1}, {1}));
}

TEST_CASE("sector sizes match the multiset count and a brute-force count") {
  for (int n = 0; n <= 8; ++n)
    for (std::size_t m = 1; m <= 4; ++m)
      for (std::size_t a = 0; a <= 3; ++a) {
        const auto basis = enumerate_sector(n, m, a);
        CHECK(basis.size() == sector_dimension(n, m, a));
        CHECK(basis.size() == brute_force_count(n, m, a));
        std::set<OccupationState> unique(basis.states().begin(), basis.states().end());
        CHECK(unique.size() == basis.size());
        for (const auto& s : basis.states()) CHECK(s.constituents() == n);
        CHECK(std::is_sorted(basis.states().begin(), basis.states().end(), std::greater<>()));
      }
}

TEST_CASE("basis lookup and merging") {
  const auto a = enumerate_sector(2, 2, 1);
  const auto b = enumerate_sector(3, 2, 1);
  CHECK(a.find(OccupationState({1, 1}, {0})) == 1u);
  CHECK_FALSE(a.find(OccupationState({1, 0}, {0})).has_value());
  const auto u = SectorBasis::merged(a, b);
  CHECK(u.size() == a.size() + b.size());
  CHECK_FALSE(u.constituents().has_value());
  CHECK(u.find(OccupationState({1, 0}, {1})).has_value());
}

TEST_CASE("normalization constant examples") {
  CHECK(normalization_constant(OccupationState({1}, {})) == 1.0);
  CHECK(normalization_constant(OccupationState({0}, {1})) == 0.5);
  CHECK(normalization_constant(OccupationState({2}, {})) == 0.5);
  CHECK(normalization_constant(OccupationState::vacuum(2, 2)) == 1.0);
  // 1/sqrt(5! 2^1 2! 1! 1!) for (2,1 ; 1)
  CHECK(normalization_constant(OccupationState({2, 1}, {1})) ==
        doctest::Approx(1.0 / std::sqrt(120.0 * 2.0 * 2.0)).epsilon(1e-15));
}

TEST_CASE("normalization constant is invariant under mode relabeling") {
  const OccupationState a({3, 0, 1}, {2, 0});
  const OccupationState b({1, 3, 0}, {0, 2});
  CHECK(normalization_constant(a) == normalization_constant(b));
  // Large-N path agrees with the exact one at the switch-over.
  const OccupationState big({12, 9}, {1});
  const double ref = 1.0 / std::sqrt(std::tgamma(24.0) * 2.0 * std::tgamma(13.0) * std::tgamma(10.0));
  CHECK(normalization_constant(big) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("ladder actions") {
  const OccupationState s({3}, {0, 1});
  const auto down = apply_ladder(s, {Species::kAtom, 0}, Ladder::kAnnihilate);
  CHECK(down.coefficient == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(down.coefficient_squared == 3);
  REQUIRE(down.state.has_value());
  CHECK(down.state->atom(0) == 2);

  const auto empty = apply_ladder(s, {Species::kMolecule, 0}, Ladder::kAnnihilate);
  CHECK(empty.coefficient == 0.0);
  CHECK_FALSE(empty.state.has_value());

  const auto up = apply_ladder(s, {Species::kMolecule, 1}, Ladder::kCreate);
  CHECK(up.coefficient == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  REQUIRE(up.state.has_value());
  CHECK(up.state->molecule(1) == 2);
  CHECK(up.state->constituents() == 7);
}

TEST_CASE("constituent guard and printing") {
  CHECK_THROWS_AS(OccupationState({65}, {}), std::overflow_error);
  CHECK_THROWS_AS(OccupationState({10}, {28}), std::overflow_error);
  CHECK_NOTHROW(OccupationState({64}, {}));
  CHECK(OccupationState({2, 0, 1}, {0, 3}).to_string() == "|2,0,1 ; 0,3⟩");
  CHECK(OccupationState({1}, {}).to_string() == "|1 ; ⟩");
}
