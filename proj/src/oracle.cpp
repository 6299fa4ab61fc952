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

#include "cbsq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cbsq/error.hpp"

namespace cbsq {

void FormalState::add(const FormalProduct& product) { add(product, 1.0); }

void FormalState::add(const FormalProduct& product, double scale) {
  auto labels = product.labels();
  if (!labels_) {
    labels_ = std::move(labels);
  } else if (*labels_ != labels) {
    throw InvalidArgument("FormalState: products cover different label sets");
  }
  terms_[product.factors()] += product.weight() * scale;
}

std::vector<FormalProduct> FormalState::products() const {
  std::vector<FormalProduct> out;
  out.reserve(terms_.size());
  for (const auto& [factors, w] : terms_) out.emplace_back(factors, w);
  return out;
}

double FormalState::norm2() const { return inner_product(*this, *this); }

double inner_product(const FormalState& bra, const FormalState& ket) {
  if (bra.empty() || ket.empty()) return 0.0;
  if (*bra.labels_ != *ket.labels_) throw InvalidArgument("inner_product: states cover different label sets");
  // Distinct keys are orthogonal under the ideal inner product, equal keys
  // contribute the product of weights.
  const auto& small = bra.size() <= ket.size() ? bra.terms_ : ket.terms_;
  const auto& large = bra.size() <= ket.size() ? ket.terms_ : bra.terms_;
  double acc = 0.0;
  for (const auto& [factors, w] : small) {
    const auto it = large.find(factors);
    if (it != large.end()) acc += w * it->second;
  }
  return acc;
}

FormalState expand_basis_state(const OccupationState& s) {
  const int n = s.constituents();
  if (n > kOracleMaxConstituents) {
    std::ostringstream msg;
    double perms = 1.0;
    for (int k = 2; k <= n; ++k) perms *= k;
    msg << "expand_basis_state: N = " << n << " exceeds the oracle limit " << kOracleMaxConstituents << " ("
        << perms << " permutations per state)";
    throw InvalidArgument(msg.str());
  }
  // Slot template: atoms first, then consecutive position pairs for composites.
  struct Slot {
    bool composite;
    std::size_t index;
    int position;
  };
  std::vector<Slot> slots;
  int pos = 0;
  for (std::size_t m = 0; m < s.modes(); ++m)
    for (int k = 0; k < s.atom(m); ++k) slots.push_back({false, m, pos++});
  for (std::size_t a = 0; a < s.composites(); ++a)
    for (int k = 0; k < s.molecule(a); ++k) {
      slots.push_back({true, a, pos});
      pos += 2;
    }

  const double norm = normalization_constant(s);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  FormalState out;
  do {
    std::vector<FormalFactor> factors;
    for (const auto& slot : slots) {
      const auto p = static_cast<std::size_t>(slot.position);
      factors.push_back(slot.composite ? pair(slot.index, perm[p], perm[p + 1]) : atom(slot.index, perm[p]));
    }
    out.add(FormalProduct(std::move(factors), norm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// Projector slot: S(a) when `pair` is false, C(a,b) otherwise.
struct Slot {
  bool pair;
  int a;
  int b;
};

Slot s_slot(int i) { return {false, i, 0}; }
Slot c_slot(int i, int j) { return {true, i, j}; }

struct Branch {
  int part;  // distinguishes memoized coefficient families
  std::vector<Slot> left;
  LabeledOperator op;
};

struct Region {
  std::vector<Slot> right;
  std::vector<Branch> branches;
};

LabeledOperator pair_hamiltonian_op(int i, int j) { return {OneBodyTerm{i}, OneBodyTerm{j}, TwoBodyTerm{i, j}}; }

// Every instance of the printed summation region of one term for labels 1..n.
std::vector<Region> regions(ProjectedTermId term, int n) {
  std::vector<Region> out;
  switch (term) {
    case TermId::kSS:
      for (int i = 1; i <= n; ++i) out.push_back({{s_slot(i)}, {{0, {s_slot(i)}, {OneBodyTerm{i}}}}});
      break;
    case TermId::kSSSS:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          out.push_back({{s_slot(i), s_slot(j)}, {{1, {s_slot(i), s_slot(j)}, {TwoBodyTerm{i, j}}}}});
      break;
    case TermId::kCC:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          out.push_back({{c_slot(i, j)}, {{2, {c_slot(i, j)}, pair_hamiltonian_op(i, j)}}});
      break;
    case TermId::kCSS:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          out.push_back({{s_slot(i), s_slot(j)}, {{3, {c_slot(i, j)}, pair_hamiltonian_op(i, j)}}});
      break;
    case TermId::kSSC:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          out.push_back({{c_slot(i, j)}, {{4, {s_slot(i), s_slot(j)}, pair_hamiltonian_op(i, j)}}});
      break;
    case TermId::kSCSC:
      // i != j < k
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = j + 1; k <= n; ++k) {
            if (i == j || i == k) continue;
            const LabeledOperator h3{OneBodyTerm{i},     OneBodyTerm{j},     OneBodyTerm{k},
                                     TwoBodyTerm{i, j}, TwoBodyTerm{j, k}, TwoBodyTerm{k, i}};
            out.push_back({{s_slot(i), c_slot(j, k)},
                           {{5, {s_slot(i), c_slot(j, k)}, {TwoBodyTerm{i, j}, TwoBodyTerm{i, k}}},
                            {6, {s_slot(j), c_slot(i, k)}, h3},
                            {7, {s_slot(k), c_slot(j, i)}, h3}}});
          }
      break;
    case TermId::kCCCC:
      // i < j, k < l, all distinct; each unordered pair of pairs once (i < k).
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (int k = i + 1; k <= n; ++k)
            for (int l = k + 1; l <= n; ++l) {
              if (k == j || l == j) continue;
              const LabeledOperator h4{OneBodyTerm{i},     OneBodyTerm{j},     OneBodyTerm{k},     OneBodyTerm{l},
                                       TwoBodyTerm{i, j}, TwoBodyTerm{k, l}, TwoBodyTerm{i, k}, TwoBodyTerm{i, l},
                                       TwoBodyTerm{j, k}, TwoBodyTerm{j, l}};
              out.push_back(
                  {{c_slot(i, j), c_slot(k, l)},
                   {{8,
                     {c_slot(i, j), c_slot(k, l)},
                     {TwoBodyTerm{i, k}, TwoBodyTerm{i, l}, TwoBodyTerm{j, k}, TwoBodyTerm{j, l}}},
                    {9, {c_slot(i, k), c_slot(j, l)}, h4},
                    {10, {c_slot(i, l), c_slot(j, k)}, h4}}});
            }
      break;
  }
  return out;
}

}  // namespace

struct ProjectedTermEvaluator::Cache {
  std::map<std::vector<long>, double> coefficients;
};

ProjectedTermEvaluator::ProjectedTermEvaluator(const ModeSpace& space, const CompositeSpectrum& spectrum)
    : space_(space), spectrum_(spectrum), cache_(std::make_unique<Cache>()) {
  if (!spectrum.empty() && spectrum.modes() != space.modes())
    throw InvalidArgument("ProjectedTermEvaluator: spectrum and mode space differ in mode count");
}

ProjectedTermEvaluator::~ProjectedTermEvaluator() = default;

FormalState ProjectedTermEvaluator::apply(ProjectedTermId term, const FormalState& state) {
  FormalState out;
  if (state.empty()) return out;
  const auto products = state.products();
  const int n = static_cast<int>(products.front().labels().size());
  const auto instances = regions(term, n);
  const std::size_t modes = space_.modes();
  const std::size_t composites = spectrum_.size();

  for (const auto& product : products) {
    const auto& factors = product.factors();
    // label -> factor index
    std::vector<int> owner(static_cast<std::size_t>(n) + 1, -1);
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (const auto* a = std::get_if<AtomFactor>(&factors[f])) {
        owner[static_cast<std::size_t>(a->label)] = static_cast<int>(f);
      } else {
        const auto& p = std::get<PairFactor>(factors[f]);
        owner[static_cast<std::size_t>(p.first)] = static_cast<int>(f);
        owner[static_cast<std::size_t>(p.second)] = static_cast<int>(f);
      }
    }

    for (const auto& region : instances) {
      // Right projector: under the ideal orthogonality a slot matches only the
      // identical partition element; anything else projects to zero.
      std::vector<int> matched;
      bool ok = true;
      for (const auto& slot : region.right) {
        const int f = owner[static_cast<std::size_t>(slot.a)];
        if (!slot.pair) {
          ok = std::holds_alternative<AtomFactor>(factors[static_cast<std::size_t>(f)]);
        } else {
          const auto* p = std::get_if<PairFactor>(&factors[static_cast<std::size_t>(f)]);
          ok = p != nullptr && p->first == std::min(slot.a, slot.b) && p->second == std::max(slot.a, slot.b);
        }
        if (!ok) break;
        matched.push_back(f);
      }
      if (!ok) continue;

      std::vector<FormalFactor> ket_local;
      std::vector<FormalFactor> rest;
      for (std::size_t f = 0; f < factors.size(); ++f) {
        if (std::find(matched.begin(), matched.end(), static_cast<int>(f)) != matched.end())
          ket_local.push_back(factors[f]);
        else
          rest.push_back(factors[f]);
      }
      const FormalProduct ket_product(ket_local);
      const auto local_labels = ket_product.labels();
      auto rank = [&](int label) {
        return static_cast<long>(std::lower_bound(local_labels.begin(), local_labels.end(), label) -
                                 local_labels.begin());
      };

      for (const auto& branch : region.branches) {
        // Enumerate every mode assignment of the left projector.
        std::vector<std::size_t> ranges;
        for (const auto& slot : branch.left) ranges.push_back(slot.pair ? composites : modes);
        if (std::any_of(ranges.begin(), ranges.end(), [](std::size_t r) { return r == 0; })) continue;
        std::vector<std::size_t> pick(ranges.size(), 0);
        while (true) {
          std::vector<FormalFactor> bra_local;
          for (std::size_t s = 0; s < branch.left.size(); ++s) {
            const auto& slot = branch.left[s];
            bra_local.push_back(slot.pair ? pair(pick[s], slot.a, slot.b) : atom(pick[s], slot.a));
          }
          const FormalProduct bra_product(bra_local);

          std::vector<long> key{branch.part};
          for (const auto& term_op : branch.op) {
            if (const auto* o = std::get_if<OneBodyTerm>(&term_op)) {
              key.insert(key.end(), {-1, rank(o->label)});
            } else {
              const auto& t = std::get<TwoBodyTerm>(term_op);
              key.insert(key.end(), {-2, rank(t.first), rank(t.second)});
            }
          }
          auto encode = [&](const FormalProduct& p) {
            for (const auto& f : p.factors()) {
              if (const auto* a = std::get_if<AtomFactor>(&f))
                key.insert(key.end(), {-3, static_cast<long>(a->mode), rank(a->label)});
              else {
                const auto& q = std::get<PairFactor>(f);
                key.insert(key.end(), {-4, static_cast<long>(q.composite), rank(q.first), rank(q.second)});
              }
            }
          };
          encode(bra_product);
          key.push_back(-5);
          encode(ket_product);

          auto [it, inserted] = cache_->coefficients.try_emplace(key, 0.0);
          if (inserted)
            it->second = labeled_matrix_element(bra_product, branch.op, ket_product, space_, spectrum_);
          const double coefficient = it->second;

          if (coefficient != 0.0) {
            std::vector<FormalFactor> emitted = rest;
            emitted.insert(emitted.end(), bra_local.begin(), bra_local.end());
            out.add(FormalProduct(std::move(emitted), product.weight() * coefficient));
          }

          std::size_t d = 0;
          while (d < pick.size() && ++pick[d] == ranges[d]) pick[d++] = 0;
          if (d == pick.size()) break;
        }
      }
    }
  }
  return out;
}

FormalState apply_projected_term(ProjectedTermId term, const FormalState& state, const ModeSpace& space,
                                 const CompositeSpectrum& spectrum) {
  ProjectedTermEvaluator evaluator(space, spectrum);
  return evaluator.apply(term, state);
}

double oracle_matrix_element(ProjectedTermId term, const OccupationState& bra, const OccupationState& ket,
                             const ModeSpace& space, const CompositeSpectrum& spectrum) {
  if (bra.constituents() != ket.constituents()) return 0.0;
  const auto applied = apply_projected_term(term, expand_basis_state(ket), space, spectrum);
  return inner_product(expand_basis_state(bra), applied);
}

}  // namespace cbsq
