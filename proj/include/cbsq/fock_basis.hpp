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

#ifndef CBSQ_FOCK_BASIS_HPP
#define CBSQ_FOCK_BASIS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cbsq {

// Largest constituent number any occupation state may carry.
inline constexpr int kMaxConstituents = 64;

// Occupations {n_m} of unbound (atom) modes and {n_a} of composite (molecule)
// modes in the idealized Fock space.
class OccupationState {
 public:
  OccupationState() = default;
  OccupationState(std::vector<std::uint8_t> atoms, std::vector<std::uint8_t> molecules);
  static OccupationState vacuum(std::size_t modes, std::size_t composites);

  std::size_t modes() const { return atoms_.size(); }
  std::size_t composites() const { return molecules_.size(); }
  int atom(std::size_t m) const { return atoms_.at(m); }
  int molecule(std::size_t a) const { return molecules_.at(a); }
  const std::vector<std::uint8_t>& atoms() const { return atoms_; }
  const std::vector<std::uint8_t>& molecules() const { return molecules_; }

  int atom_count() const;      // N_A
  int molecule_count() const;  // N_M
  int constituents() const { return atom_count() + 2 * molecule_count(); }

  // |n_1,...,n_M ; n_1,...,n_A>
  std::string to_string() const;

  friend auto operator<=>(const OccupationState&, const OccupationState&) = default;
  friend bool operator==(const OccupationState&, const OccupationState&) = default;

 private:
  std::vector<std::uint8_t> atoms_;
  std::vector<std::uint8_t> molecules_;
};

enum class Species { kAtom, kMolecule };
enum class Ladder { kCreate, kAnnihilate };

struct ModeRef {
  Species species;
  std::size_t index;
};

struct LadderResult {
  double coefficient = 0.0;
  // Exact square of the coefficient (n or n+1).
  std::uint64_t coefficient_squared = 0;
  std::optional<OccupationState> state;
};

// a|n> = sqrt(n)|n-1>, a^dagger|n> = sqrt(n+1)|n+1>, identically for atom and
// molecule modes. Annihilating an empty mode yields coefficient 0 and no state.
LadderResult apply_ladder(const OccupationState& s, ModeRef mode, Ladder direction);

// 1/sqrt(N! 2^{N_M} prod n_m! prod n_a!)
double normalization_constant(const OccupationState& s);

// Ordered set of occupation states with index lookup. A basis produced by
// enumerate_sector holds a single constituent-number sector; merged() builds
// unions of sectors.
class SectorBasis {
 public:
  SectorBasis() = default;
  SectorBasis(std::size_t modes, std::size_t composites, std::optional<int> constituents,
              std::vector<OccupationState> states);

  static SectorBasis merged(const SectorBasis& a, const SectorBasis& b);

  std::size_t modes() const { return modes_; }
  std::size_t composites() const { return composites_; }
  // Constituent number N shared by every state, if the basis is a single sector.
  std::optional<int> constituents() const { return constituents_; }
  std::size_t size() const { return states_.size(); }
  const OccupationState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<OccupationState>& states() const { return states_; }
  std::optional<std::size_t> find(const OccupationState& s) const;

 private:
  std::size_t modes_ = 0;
  std::size_t composites_ = 0;
  std::optional<int> constituents_;
  std::vector<OccupationState> states_;
  std::map<OccupationState, std::size_t> index_;
};

// All states with sum n_m + 2 sum n_a = N, ordered lexicographically
// descending on (atom counts, molecule counts).
SectorBasis enumerate_sector(int constituents, std::size_t modes, std::size_t composites);

// sum_{N_M} multiset(M, N - 2 N_M) * multiset(A, N_M)
std::uint64_t sector_dimension(int constituents, std::size_t modes, std::size_t composites);

}  // namespace cbsq

#endif  // CBSQ_FOCK_BASIS_HPP
