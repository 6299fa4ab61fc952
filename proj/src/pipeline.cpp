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

#include "cbsq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cbsq/error.hpp"
#include "json.hpp"

namespace cbsq {

namespace {

using ojson = nlohmann::ordered_json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson config_json(const ModelConfig& c) {
  ojson out;
  if (const auto* ring = std::get_if<RingSpec>(&c.model)) {
    out["model"] = {{"type", "ring"}, {"sites", ring->sites}, {"t", ring->t}, {"U", ring->U}};
  } else {
    const auto& e = std::get<ExplicitSpec>(c.model);
    ojson rows = ojson::array();
    for (std::size_t r = 0; r < e.O.rows(); ++r) {
      ojson row = ojson::array();
      for (std::size_t k = 0; k < e.O.cols(); ++k) row.push_back(e.O(r, k));
      rows.push_back(row);
    }
    out["model"] = {{"type", "explicit"}, {"O", rows}, {"T4", e.T4}};
  }
  out["truncation"] = {{"n_max", c.n_max}};
  if (c.bound.kind() == BoundPolicy::Kind::kLowestK) {
    out["bound"] = {{"policy", "lowest_k"}, {"k", c.bound.k()}};
  } else {
    out["bound"] = {{"policy", "below_edge"}};
    if (c.bound.has_margin()) out["bound"]["margin"] = c.bound.margin();
  }
  ojson formats = ojson::array();
  if (c.output.json) formats.push_back("json");
  if (c.output.csv) formats.push_back("csv");
  out["output"] = {{"dir", c.output.dir}, {"formats", formats}, {"n_eigs", c.output.n_eigs}};
  return out;
}

ojson spectrum_object(const PreparedModel& model) {
  const auto& s = model.spectrum;
  const std::size_t m = s.modes();
  ojson out;
  out["modes"] = model.space.basis.labels();
  out["continuum_edge"] = s.continuum_edge();
  if (model.config.bound.kind() == BoundPolicy::Kind::kBelowEdge) {
    out["policy"] = "below_edge";
    out["margin"] = model.config.bound.margin_for(s.continuum_edge());
  } else {
    out["policy"] = "lowest_k";
    out["k"] = model.config.bound.k();
  }
  ojson states = ojson::array();
  for (std::size_t a = 0; a < s.size(); ++a) {
    ojson c = ojson::array();
    for (std::size_t p = 0; p < m; ++p) {
      ojson row = ojson::array();
      for (std::size_t q = 0; q < m; ++q) row.push_back(s.coefficient(a, p, q));
      c.push_back(row);
    }
    states.push_back({{"index", a}, {"energy", s.energy(a)}, {"coefficients", c}});
  }
  out["bound_states"] = states;
  return out;
}

ojson verification_summary(const VerificationReport& r) {
  return {{"max_n", r.max_n},
          {"max_abs_diff", r.max_abs_diff},
          {"pairs_checked", r.pairs_checked},
          {"tolerance", kVerificationTolerance},
          {"passed", r.max_abs_diff <= kVerificationTolerance}};
}

}  // namespace

PreparedModel prepare_model(ModelConfig config, std::optional<std::uint64_t> seed) {
  ModeSpace space = build_model(config);
  if (seed) space = random_model(space.modes(), *seed);
  const PairHamiltonian h = build_pair_hamiltonian(space.one_body, space.two_body);
  CompositeSpectrum spectrum = solve_bound_states(h, space.one_body, config.bound);
  return {std::move(config), std::move(space), std::move(spectrum), seed};
}

SectorAnalysis analyze_sector(const PreparedModel& model, int constituents, std::size_t n_eigs, int threads) {
  SectorBasis basis = enumerate_sector(constituents, model.space.modes(), model.spectrum.size());
  SparseHamiltonian h = assemble_hamiltonian(basis, model.space, model.spectrum, threads);
  SectorResult r;
  r.constituents = constituents;
  r.dimension = h.basis().size();
  for (TermId t : kAllTerms) r.term_norms[term_index(t)] = h.term(t).norm();
  r.total_norm = h.total().norm();
  r.max_asymmetry = h.symmetry().max_asymmetry;
  if (r.max_asymmetry > kSymmetryTolerance) {
    std::string detail;
    for (const auto& e : h.symmetry().offending)
      detail += " (" + h.basis()[e.row].to_string() + ", " + h.basis()[e.col].to_string() + ": " + g17(e.value) + ")";
    throw NumericalError("sector N=" + std::to_string(constituents) + " is not symmetric, max |H - H^T| = " +
                         g17(r.max_asymmetry) + ";" + detail);
  }

  const std::size_t k = std::min(n_eigs, r.dimension);
  if (r.dimension <= kDenseSectorLimit) {
    const EigenSystem es = dense_symmetric_eigen(h.total().to_dense());
    r.eigenvalues.assign(es.values.begin(), es.values.begin() + static_cast<std::ptrdiff_t>(k));
    if (constituents > 0 && r.dimension > 0) {
      double w = 0.0;
      for (std::size_t i = 0; i < r.dimension; ++i) {
        const double v = es.vectors(i, 0);
        w += v * v * 2.0 * h.basis()[i].molecule_count() / constituents;
      }
      r.ground_molecule_weight = w;
    }
  } else {
    r.eigenvalues = sparse_lowest_eigen(h.total(), k);
  }
  return {std::move(h), std::move(r)};
}

RunReport run_spectrum(const PreparedModel& model, int threads) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.model = &model;
  for (int n = 0; n <= model.config.n_max; ++n)
    report.sectors.push_back(analyze_sector(model, n, model.config.output.n_eigs, threads).result);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string composite_spectrum_json(const PreparedModel& model) {
  ojson out;
  out["schema_version"] = kReportSchemaVersion;
  out.update(spectrum_object(model));
  return out.dump(2) + "\n";
}

std::string report_json(const RunReport& report) {
  if (report.model == nullptr) throw InvalidArgument("report_json: report has no model");
  const PreparedModel& model = *report.model;
  ojson out;
  out["schema_version"] = kReportSchemaVersion;
  out["config"] = config_json(model.config);
  out["seed"] = model.seed ? ojson(*model.seed) : ojson(nullptr);
  out["composite_spectrum"] = spectrum_object(model);
  ojson sectors = ojson::array();
  for (const auto& s : report.sectors) {
    ojson norms;
    for (TermId t : kAllTerms) norms[std::string(term_name(t))] = s.term_norms[term_index(t)];
    ojson entry{{"N", s.constituents},
                {"dimension", s.dimension},
                {"lowest_eigenvalues", s.eigenvalues},
                {"term_norms", norms},
                {"total_norm", s.total_norm},
                {"max_asymmetry", s.max_asymmetry}};
    if (s.ground_molecule_weight) entry["ground_molecule_weight"] = *s.ground_molecule_weight;
    sectors.push_back(entry);
  }
  out["sectors"] = sectors;
  if (report.verification) out["verification"] = verification_summary(*report.verification);
  return out.dump(2) + "\n";
}

std::string verification_json(const VerificationReport& report) {
  ojson out;
  out["schema_version"] = kReportSchemaVersion;
  out["summary"] = verification_summary(report);
  out["readings"] = {
      {"SCSC", "region i != j < k; direct T(i,j)+T(i,k) plus exchanges S(j)C(i,k) and S(k)C(j,i) under H(i,j,k)"},
      {"CCCC", "unordered pairs {i<j},{k<l}, i<k, all distinct; direct T over the four cross pairs plus the "
               "re-pairings C(i,k)C(j,l) and C(i,l)C(j,k) under H(i,j,k,l)"}};
  ojson entries = ojson::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"term", e.term},
                       {"sector", e.sector},
                       {"bra", e.bra.to_string()},
                       {"ket", e.ket.to_string()},
                       {"sq_value", e.sq_value},
                       {"oracle_value", e.oracle_value},
                       {"abs_diff", e.abs_diff}});
  }
  out["entries"] = entries;
  return out.dump(2) + "\n";
}

std::string eigenvalues_csv(const SectorResult& sector) {
  std::string out = "N,index,eigenvalue\n";
  for (std::size_t i = 0; i < sector.eigenvalues.size(); ++i)
    out += std::to_string(sector.constituents) + "," + std::to_string(i) + "," + g17(sector.eigenvalues[i]) + "\n";
  return out;
}

std::string triplets_csv(const SparseMatrix& m) {
  std::string out = "row,col,value\n";
  for (const auto& t : m.triplets())
    out += std::to_string(t.row) + "," + std::to_string(t.col) + "," + g17(t.value) + "\n";
  return out;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

void write_report(const RunReport& report, const std::string& dir) {
  const auto& options = report.model->config.output;
  if (options.json) write_text(dir, "report.json", report_json(report));
  if (options.csv)
    for (const auto& s : report.sectors)
      write_text(dir, "sector_" + std::to_string(s.constituents) + "_eigs.csv", eigenvalues_csv(s));
  ojson timing{{"seconds", report.seconds}};
  write_text(dir, "timing.json", timing.dump(2) + "\n");
}

void export_matrices(const PreparedModel& model, const std::string& dir, int threads) {
  for (int n = 0; n <= model.config.n_max; ++n) {
    const SectorBasis basis = enumerate_sector(n, model.space.modes(), model.spectrum.size());
    const std::string suffix = "_sector_" + std::to_string(n) + ".csv";
    std::string listing = "index,state\n";
    for (std::size_t i = 0; i < basis.size(); ++i) listing += std::to_string(i) + ",\"" + basis[i].to_string() + "\"\n";
    write_text(dir, "sector_" + std::to_string(n) + "_basis.csv", listing);
    for (TermId t : kAllTerms)
      write_text(dir, "term_" + std::string(term_name(t)) + suffix,
                 triplets_csv(build_term(t, basis, model.space, model.spectrum, threads)));
  }
}

}  // namespace cbsq
