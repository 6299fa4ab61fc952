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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbsq/pipeline.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cbsq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cbsq_pipeline_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("vacuum-only run") {
  const auto model = prepare_model(load_config(R"({"model":{"type":"ring","sites":3,"t":1,"U":-5},
      "truncation":{"n_max":0}})"));
  const auto dir = scratch("vacuum");
  write_report(run_spectrum(model, 1), dir.string());
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  REQUIRE(report["sectors"].size() == 1);
  CHECK(report["sectors"][0]["N"] == 0);
  CHECK(report["sectors"][0]["dimension"] == 1);
  CHECK(report["sectors"][0]["lowest_eigenvalues"][0] == 0.0);
  CHECK(slurp(dir / "sector_0_eigs.csv") == "N,index,eigenvalue\n0,0,0\n");
  CHECK(fs::exists(dir / "timing.json"));
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const auto model = prepare_model(load_config(R"({"model":{"type":"ring","sites":4,"t":1,"U":-6},
      "truncation":{"n_max":3}})"));
  const auto a = scratch("det_a"), b = scratch("det_b");
  write_report(run_spectrum(model, 1), a.string());
  write_report(run_spectrum(model, 3), b.string());
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  for (int n = 0; n <= 3; ++n) {
    const auto name = "sector_" + std::to_string(n) + "_eigs.csv";
    CHECK(slurp(a / name) == slurp(b / name));
  }
  const auto report = nlohmann::ordered_json::parse(slurp(a / "report.json"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : report.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema_version", "config", "seed", "composite_spectrum", "sectors"});
  CHECK(report["schema_version"] == kReportSchemaVersion);
}

TEST_CASE("sector results") {
  const auto model = prepare_model(load_config(R"({"model":{"type":"ring","sites":2,"t":1,"U":-4},
      "bound":{"policy":"lowest_k","k":1},"truncation":{"n_max":2},"output":{"n_eigs":2}})"));
  const auto two = analyze_sector(model, 2, 2, 1).result;
  CHECK(two.dimension == 4);
  REQUIRE(two.eigenvalues.size() == 2);
  CHECK(two.eigenvalues[0] <= two.eigenvalues[1]);
  REQUIRE(two.ground_molecule_weight.has_value());
  CHECK(*two.ground_molecule_weight >= 0.0);
  CHECK(*two.ground_molecule_weight <= 1.0);
  CHECK(two.max_asymmetry <= 1e-12);
  CHECK_FALSE(analyze_sector(model, 0, 2, 1).result.ground_molecule_weight.has_value());
}

TEST_CASE("csv formats") {
  SectorResult s;
  s.constituents = 2;
  s.eigenvalues = {-0.1, 2.0};
  CHECK(eigenvalues_csv(s) == "N,index,eigenvalue\n2,0,-0.10000000000000001\n2,1,2\n");
  const auto m = SparseMatrix::from_triplets(2, {{1, 0, 1.0 / 3.0}});
  CHECK(triplets_csv(m) == "row,col,value\n1,0,0.33333333333333331\n");
}

TEST_CASE("matrix export and verification report") {
  const auto model = prepare_model(load_config(R"({"model":{"type":"ring","sites":2,"t":1,"U":-4},
      "truncation":{"n_max":2}})"));
  const auto dir = scratch("export");
  export_matrices(model, dir.string(), 1);
  for (int n = 0; n <= 2; ++n)
    for (TermId t : kAllTerms)
      CHECK(fs::exists(dir / ("term_" + std::string(term_name(t)) + "_sector_" + std::to_string(n) + ".csv")));
  CHECK(slurp(dir / "sector_1_basis.csv") == "index,state\n0,\"|1,0 ; 0,0⟩\"\n1,\"|0,1 ; 0,0⟩\"\n");

  const auto r = verify_equivalence(model.space, model.spectrum, 2, 1);
  const auto v = nlohmann::json::parse(verification_json(r));
  CHECK(v["summary"]["passed"] == true);
  CHECK(v["summary"]["pairs_checked"] == r.pairs_checked);
  CHECK(v["entries"].size() == r.entries.size());
  CHECK(v["entries"][0].contains("oracle_value"));
}

TEST_CASE("seeded models replace the tensors") {
  const auto cfg = load_config(R"({"model":{"type":"ring","sites":3,"t":1,"U":-5},"bound":{"policy":"lowest_k","k":2}})");
  const auto a = prepare_model(cfg, 7);
  const auto b = prepare_model(cfg, 7);
  CHECK(a.seed == 7u);
  CHECK(a.space.two_body.flat() == b.space.two_body.flat());
  CHECK(a.space.two_body.flat() != prepare_model(cfg).space.two_body.flat());
  CHECK(a.spectrum.size() == 2);
}
