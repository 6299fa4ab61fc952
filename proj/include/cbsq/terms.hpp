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

#ifndef CBSQ_TERMS_HPP
#define CBSQ_TERMS_HPP

#include <array>
#include <optional>
#include <string_view>

namespace cbsq {

// The seven physical-process terms of the projected Hamiltonian. S marks an
// unbound constituent, C a composite.
enum class TermId {
  kSS,    // unbound one-body
  kSSSS,  // unbound-unbound interaction
  kCC,    // composite one-body
  kCSS,   // two unbound -> one composite
  kSSC,   // one composite -> two unbound
  kSCSC,  // unbound-composite interaction and exchange
  kCCCC,  // composite-composite interaction and exchange
};

inline constexpr std::array<TermId, 7> kAllTerms{TermId::kSS,  TermId::kSSSS, TermId::kCC,  TermId::kCSS,
                                                 TermId::kSSC, TermId::kSCSC, TermId::kCCCC};

inline constexpr std::string_view term_name(TermId t) {
  switch (t) {
    case TermId::kSS: return "SS";
    case TermId::kSSSS: return "SSSS";
    case TermId::kCC: return "CC";
    case TermId::kCSS: return "CSS";
    case TermId::kSSC: return "SSC";
    case TermId::kSCSC: return "SCSC";
    case TermId::kCCCC: return "CCCC";
  }
  return "?";
}

inline std::optional<TermId> parse_term(std::string_view name) {
  for (TermId t : kAllTerms)
    if (term_name(t) == name) return t;
  return std::nullopt;
}

inline constexpr std::size_t term_index(TermId t) { return static_cast<std::size_t>(t); }

}  // namespace cbsq

#endif  // CBSQ_TERMS_HPP
