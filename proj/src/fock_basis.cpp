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

#include "cbsq/fock_basis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cbsq/error.hpp"

namespace cbsq {

namespace {

int total(const std::vector<std::uint8_t>& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace

OccupationState::OccupationState(std::vector<std::uint8_t> atoms, std::vector<std::uint8_t> molecules)
    : atoms_(std::move(atoms)), molecules_(std::move(molecules)) {
  if (constituents() > kMaxConstituents) {
    std::ostringstream msg;
    msg << "OccupationState: constituent number " << constituents() << " exceeds the limit "
        << kMaxConstituents;
    throw std::overflow_error(msg.str());
  }
}

OccupationState OccupationState::vacuum(std::size_t modes, std::size_t composites) {
  return OccupationState(std::vector<std::uint8_t>(modes, 0), std::vector<std::uint8_t>(composites, 0));
}

int OccupationState::atom_count() const { return total(atoms_); }
int OccupationState::molecule_count() const { return total(molecules_); }

std::string OccupationState::to_string() const {
  std::ostringstream out;
  out << "|";
  for (std::size_t m = 0; m < atoms_.size(); ++m) out << (m ? "," : "") << static_cast<int>(atoms_[m]);
  out << " ; ";
  for (std::size_t a = 0; a < molecules_.size(); ++a) out << (a ? "," : "") << static_cast<int>(molecules_[a]);
  out << "⟩";
  return out.str();
}

LadderResult apply_ladder(const OccupationState& s, ModeRef mode, Ladder direction) {
  auto atoms = s.atoms();
  auto molecules = s.molecules();
  auto& counts = mode.species == Species::kAtom ? atoms : molecules;
  if (mode.index >= counts.size()) throw InvalidArgument("apply_ladder: mode index out of range");
  std::uint8_t& n = counts[mode.index];
  LadderResult out;
  if (direction == Ladder::kAnnihilate) {
    if (n == 0) return out;
    out.coefficient_squared = n;
    --n;
  } else {
    out.coefficient_squared = static_cast<std::uint64_t>(n) + 1;
    ++n;
  }
  out.coefficient = std::sqrt(static_cast<double>(out.coefficient_squared));
  out.state = OccupationState(std::move(atoms), std::move(molecules));
  return out;
}

double normalization_constant(const OccupationState& s) {
  // Accumulate log-factorials; exact for the small integers involved.
  double log_denominator = std::lgamma(s.constituents() + 1.0) + s.molecule_count() * std::log(2.0);
  for (auto n : s.atoms()) log_denominator += std::lgamma(n + 1.0);
  for (auto n : s.molecules()) log_denominator += std::lgamma(n + 1.0);
  if (s.constituents() <= 20) {
    // Exact integer arithmetic for the common desk-scale case.
    std::uint64_t denominator = 1;
    for (int k = 2; k <= s.constituents(); ++k) denominator *= static_cast<std::uint64_t>(k);
    long double d = static_cast<long double>(denominator);
    d *= std::ldexp(1.0L, s.molecule_count());
    for (auto n : s.atoms())
      for (int k = 2; k <= n; ++k) d *= k;
    for (auto n : s.molecules())
      for (int k = 2; k <= n; ++k) d *= k;
    return static_cast<double>(1.0L / std::sqrt(d));
  }
  return std::exp(-0.5 * log_denominator);
}

SectorBasis::SectorBasis(std::size_t modes, std::size_t composites, std::optional<int> constituents,
                         std::vector<OccupationState> states)
    : modes_(modes), composites_(composites), constituents_(constituents), states_(std::move(states)) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto& s = states_[i];
    if (s.modes() != modes_ || s.composites() != composites_)
      throw InvalidArgument("SectorBasis: state " + s.to_string() + " has the wrong shape");
    if (constituents_ && s.constituents() != *constituents_)
      throw InvalidArgument("SectorBasis: state " + s.to_string() + " lies outside the sector");
    if (!index_.emplace(s, i).second)
      throw InvalidArgument("SectorBasis: duplicate state " + s.to_string());
  }
}

SectorBasis SectorBasis::merged(const SectorBasis& a, const SectorBasis& b) {
  if (a.modes() != b.modes() || a.composites() != b.composites())
    throw InvalidArgument("SectorBasis::merged: bases have different mode counts");
  std::vector<OccupationState> states = a.states();
  states.insert(states.end(), b.states().begin(), b.states().end());
  std::optional<int> n;
  if (a.constituents() && a.constituents() == b.constituents()) n = a.constituents();
  return SectorBasis(a.modes(), a.composites(), n, std::move(states));
}

std::optional<std::size_t> SectorBasis::find(const OccupationState& s) const {
  const auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Every vector of `slots` non-negative counts summing to `total`.
void compositions(std::size_t slots, int total, std::vector<std::vector<std::uint8_t>>& out) {
  std::vector<std::uint8_t> current(slots, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
    if (slot + 1 >= slots) {
      if (slots == 0) {
        if (left == 0) out.push_back(current);
        return;
      }
      current[slot] = static_cast<std::uint8_t>(left);
      out.push_back(current);
      return;
    }
    for (int n = left; n >= 0; --n) {
      current[slot] = static_cast<std::uint8_t>(n);
      rec(slot + 1, left - n);
    }
    current[slot] = 0;
  };
  rec(0, total);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t multiset(std::size_t kinds, std::uint64_t items) {
  if (kinds == 0) return items == 0 ? 1 : 0;
  return binomial(items + kinds - 1, items);
}

}  // namespace

SectorBasis enumerate_sector(int constituents, std::size_t modes, std::size_t composites) {
  if (constituents < 0) throw InvalidArgument("enumerate_sector: N must be non-negative");
  if (constituents > kMaxConstituents) {
    std::ostringstream msg;
    msg << "enumerate_sector: N = " << constituents << " exceeds the limit " << kMaxConstituents;
    throw std::overflow_error(msg.str());
  }
  std::vector<OccupationState> states;
  for (int pairs = 0; 2 * pairs <= constituents; ++pairs) {
    std::vector<std::vector<std::uint8_t>> atom_parts;
    std::vector<std::vector<std::uint8_t>> molecule_parts;
    compositions(modes, constituents - 2 * pairs, atom_parts);
    compositions(composites, pairs, molecule_parts);
    for (const auto& a : atom_parts)
      for (const auto& m : molecule_parts) states.emplace_back(a, m);
  }
  std::sort(states.begin(), states.end(), std::greater<>());
  return SectorBasis(modes, composites, constituents, std::move(states));
}

std::uint64_t sector_dimension(int constituents, std::size_t modes, std::size_t composites) {
  std::uint64_t total_count = 0;
  for (int pairs = 0; 2 * pairs <= constituents; ++pairs)
    total_count += multiset(modes, static_cast<std::uint64_t>(constituents - 2 * pairs)) *
                   multiset(composites, static_cast<std::uint64_t>(pairs));
  return total_count;
}

}  // namespace cbsq
