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

#ifndef CBSQ_MODELS_HPP
#define CBSQ_MODELS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cbsq/mode_space.hpp"
#include "cbsq/numerics.hpp"

namespace cbsq {

// Bose ring with nearest-neighbour hopping -t and contact interaction U,
// expressed in the real momentum basis: modes ordered by hopping energy
// -2t cos(2 pi k / M), cosine before sine inside a +-k doublet. Two sites
// are joined by a single bond. Throws InvalidArgument for sites < 2.
ModeSpace build_ring_model(std::size_t sites, double t, double U);

// Site-basis momentum transformation used by build_ring_model; column j is
// mode j.
DenseMatrix ring_mode_vectors(std::size_t sites, double t);

// Seeded random real model: O symmetric, T4 averaged over the exchange and
// Hermitian symmetry group. Entries are uniform in [-1, 1) before symmetrizing.
ModeSpace random_model(std::size_t modes, std::uint64_t seed);

struct RingSpec {
  std::size_t sites = 0;
  double t = 1.0;
  double U = 0.0;
};

// T4 is flat row-major over [m][n][p][q]: entry ((m*M + n)*M + p)*M + q holds
// <psi_m(1) psi_n(2)|T|psi_p(1) psi_q(2)>.
struct ExplicitSpec {
  DenseMatrix O;
  std::vector<double> T4;
};

struct OutputOptions {
  std::string dir = ".";
  bool json = true;
  bool csv = true;
  std::size_t n_eigs = 8;
};

struct ModelConfig {
  std::variant<RingSpec, ExplicitSpec> model;
  int n_max = 4;
  BoundPolicy bound = BoundPolicy::below_edge();
  OutputOptions output;
};

// Parses and validates a JSON configuration. Unknown keys are rejected at
// every level. Throws ConfigError with line and column for malformed text and
// naming the offending field otherwise.
ModelConfig load_config(std::string_view text);
ModelConfig load_config_file(const std::string& path);

// Validated mode space described by the configuration.
ModeSpace build_model(const ModelConfig& config);

}  // namespace cbsq

#endif  // CBSQ_MODELS_HPP
