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

#include "cbsq/cbsq.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

constexpr const char* kTwoSite = R"({"model":{"type":"ring","sites":2,"t":1,"U":-4},"truncation":{"n_max":2}})";

struct ModelGuard {
  cbsq_model* m = nullptr;
  ~ModelGuard() { cbsq_model_free(m); }
};

struct SectorGuard {
  cbsq_sector* s = nullptr;
  ~SectorGuard() { cbsq_sector_free(s); }
};

}  // namespace

TEST_CASE("c api: model accessors") {
  ModelGuard g;
  REQUIRE(cbsq_model_from_config_text(kTwoSite, &g.m) == CBSQ_OK);
  size_t modes = 0, composites = 0, count = 0;
  int n_max = -1;
  double edge = 0.0;
  CHECK(cbsq_model_mode_count(g.m, &modes) == CBSQ_OK);
  CHECK(cbsq_model_composite_count(g.m, &composites) == CBSQ_OK);
  CHECK(cbsq_model_n_max(g.m, &n_max) == CBSQ_OK);
  CHECK(cbsq_model_continuum_edge(g.m, &edge) == CBSQ_OK);
  CHECK(modes == 2);
  CHECK(composites == 2);
  CHECK(n_max == 2);
  CHECK(edge == doctest::Approx(-2.0));
  double energies[4] = {};
  CHECK(cbsq_model_composite_energies(g.m, energies, 1, &count) == CBSQ_OK);
  CHECK(count == 2);
  CHECK(std::abs(energies[0] + 2.0 + 2.0 * std::sqrt(2.0)) <= 1e-12);
  CHECK(energies[1] == 0.0);  // capacity respected
}

TEST_CASE("c api: sectors") {
  ModelGuard g;
  REQUIRE(cbsq_model_from_config_text(kTwoSite, &g.m) == CBSQ_OK);
  SectorGuard s;
  REQUIRE(cbsq_sector_build(g.m, 2, 2, &s.s) == CBSQ_OK);
  size_t dim = 0, count = 0;
  CHECK(cbsq_sector_dimension(s.s, &dim) == CBSQ_OK);
  CHECK(dim == 5);
  double asym = 1.0;
  CHECK(cbsq_sector_max_asymmetry(s.s, &asym) == CBSQ_OK);
  CHECK(asym <= 1e-12);

  CHECK(cbsq_sector_triplets(s.s, CBSQ_TERM_TOTAL, nullptr, nullptr, nullptr, 0, &count) == CBSQ_OK);
  std::vector<size_t> rows(count), cols(count);
  std::vector<double> values(count);
  size_t again = 0;
  CHECK(cbsq_sector_triplets(s.s, CBSQ_TERM_TOTAL, rows.data(), cols.data(), values.data(), count, &again) == CBSQ_OK);
  CHECK(again == count);
  CHECK(cbsq_sector_triplets(s.s, 7, nullptr, nullptr, nullptr, 0, &count) == CBSQ_ERR_INVALID_ARGUMENT);

  double eig[5] = {};
  CHECK(cbsq_sector_lowest_eigenvalues(s.s, 5, eig, &count) == CBSQ_OK);
  CHECK(count == 5);
  for (int i = 1; i < 5; ++i) CHECK(eig[i] >= eig[i - 1]);

  double w = -1.0;
  CHECK(cbsq_sector_ground_molecule_weight(s.s, &w) == CBSQ_OK);
  CHECK(w >= 0.0);

  char* text = nullptr;
  CHECK(cbsq_sector_state(s.s, 0, &text) == CBSQ_OK);
  CHECK(std::string(text) == "|2,0 ; 0,0⟩");
  cbsq_string_free(text);
  CHECK(cbsq_sector_state(s.s, 5, &text) == CBSQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: errors") {
  cbsq_model* m = nullptr;
  CHECK(cbsq_model_from_config_text("{\"model\":1}", &m) == CBSQ_ERR_CONFIG);
  CHECK(m == nullptr);
  CHECK(std::strlen(cbsq_last_error()) > 0);
  CHECK(cbsq_model_from_config_text(nullptr, &m) == CBSQ_ERR_INVALID_ARGUMENT);
  CHECK(cbsq_model_from_config_file("/nonexistent.json", &m) == CBSQ_ERR_CONFIG);
  size_t n = 0;
  CHECK(cbsq_model_mode_count(nullptr, &n) == CBSQ_ERR_INVALID_ARGUMENT);
  CHECK(std::string(cbsq_status_name(CBSQ_ERR_VERIFICATION)) == "verification failure");

  ModelGuard g;
  REQUIRE(cbsq_model_from_config_text(kTwoSite, &g.m) == CBSQ_OK);
  cbsq_sector* s = nullptr;
  CHECK(cbsq_sector_build(g.m, -1, 1, &s) == CBSQ_ERR_INVALID_ARGUMENT);
  CHECK(cbsq_verify(g.m, 7, 1, nullptr, nullptr) == CBSQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: verification and runs") {
  ModelGuard g;
  REQUIRE(cbsq_model_from_config_text(kTwoSite, &g.m) == CBSQ_OK);
  double diff = 1.0;
  size_t pairs = 0;
  CHECK(cbsq_verify(g.m, 3, 2, &diff, &pairs) == CBSQ_OK);
  CHECK(diff <= 1e-10);
  CHECK(pairs > 0);

  CHECK(cbsq_model_randomize(g.m, 5) == CBSQ_OK);
  CHECK(cbsq_verify(g.m, 3, 2, &diff, &pairs) == CBSQ_OK);

  const auto dir = std::filesystem::temp_directory_path() / "cbsq_capi_runs";
  std::filesystem::remove_all(dir);
  const std::string d = dir.string();
  CHECK(cbsq_run_solve_pair(g.m, d.c_str()) == CBSQ_OK);
  CHECK(cbsq_run_spectrum(g.m, d.c_str(), 1) == CBSQ_OK);
  CHECK(cbsq_run_verify(g.m, d.c_str(), 2, 1, &diff) == CBSQ_OK);
  CHECK(cbsq_run_export(g.m, d.c_str(), 1) == CBSQ_OK);
  for (const char* f : {"composite_spectrum.json", "report.json", "sector_2_eigs.csv", "verification.json",
                        "term_CCCC_sector_2.csv"})
    CHECK(std::filesystem::exists(dir / f));
}
