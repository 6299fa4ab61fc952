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

#ifndef CBSQ_PIPELINE_HPP
#define CBSQ_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbsq/models.hpp"
#include "cbsq/oracle.hpp"
#include "cbsq/sq_hamiltonian.hpp"

namespace cbsq {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr double kVerificationTolerance = 1e-10;
// Sectors up to this dimension are diagonalized densely (ground vector kept);
// larger ones go through Lanczos.
inline constexpr std::size_t kDenseSectorLimit = 512;

struct PreparedModel {
  ModelConfig config;
  ModeSpace space;
  CompositeSpectrum spectrum;
  // Set when the configured tensors were replaced by random_model(M, seed).
  std::optional<std::uint64_t> seed;
};

PreparedModel prepare_model(ModelConfig config, std::optional<std::uint64_t> seed = std::nullopt);

struct SectorResult {
  int constituents = 0;
  std::size_t dimension = 0;
  std::vector<double> eigenvalues;  // lowest, ascending
  // Expected fraction of constituents bound in molecules, sum_i |v_i|^2 2 N_M(i) / N,
  // for the ground vector; only for dense sectors with N > 0.
  std::optional<double> ground_molecule_weight;
  std::array<double, 7> term_norms{};
  double total_norm = 0.0;
  double max_asymmetry = 0.0;
};

struct SectorAnalysis {
  SparseHamiltonian hamiltonian;
  SectorResult result;
};

SectorAnalysis analyze_sector(const PreparedModel& model, int constituents, std::size_t n_eigs, int threads);

struct RunReport {
  const PreparedModel* model = nullptr;
  std::vector<SectorResult> sectors;
  std::optional<VerificationReport> verification;
  double seconds = 0.0;
};

RunReport run_spectrum(const PreparedModel& model, int threads);

// Serializers. Numbers are written in shortest round-trip form (JSON) or with
// 17 significant digits (CSV); key order is fixed, so identical inputs give
// byte-identical files.
std::string composite_spectrum_json(const PreparedModel& model);
std::string report_json(const RunReport& report);
std::string verification_json(const VerificationReport& report);
std::string eigenvalues_csv(const SectorResult& sector);
std::string triplets_csv(const SparseMatrix& m);

// Writers create `dir` if needed and throw IoError on failure. write_report
// emits report.json and sector_<N>_eigs.csv per the output options, and the
// run time separately in timing.json.
void write_text(const std::string& dir, const std::string& name, const std::string& text);
void write_report(const RunReport& report, const std::string& dir);
// term_<id>_sector_<N>.csv for every term and sector 0..n_max, plus
// sector_<N>_basis.csv mapping indices to states.
void export_matrices(const PreparedModel& model, const std::string& dir, int threads);

}  // namespace cbsq

#endif  // CBSQ_PIPELINE_HPP
