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

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "cbsq/error.hpp"
#include "cbsq/pipeline.hpp"

struct cbsq_model {
  cbsq::PreparedModel prepared;
};

struct cbsq_sector {
  cbsq::SectorAnalysis analysis;
};

namespace {

thread_local std::string last_error;

cbsq_status fail(cbsq_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Body>
cbsq_status guarded(Body&& body) {
  try {
    return body();
  } catch (const cbsq::ConfigError& e) {
    return fail(CBSQ_ERR_CONFIG, e.what());
  } catch (const cbsq::NumericalError& e) {
    return fail(CBSQ_ERR_NUMERICAL, e.what());
  } catch (const cbsq::IoError& e) {
    return fail(CBSQ_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CBSQ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::overflow_error& e) {
    return fail(CBSQ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CBSQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CBSQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CBSQ_ERR_INTERNAL, "unknown exception");
  }
}

#define CBSQ_REQUIRE(ptr) \
  if ((ptr) == nullptr) return fail(CBSQ_ERR_INVALID_ARGUMENT, std::string(__func__) + ": " #ptr " is null")

std::string directory(const cbsq_model* model, const char* out_dir) {
  return out_dir != nullptr ? std::string(out_dir) : model->prepared.config.output.dir;
}

cbsq_status make_model(cbsq::ModelConfig config, cbsq_model** out) {
  auto* m = new cbsq_model{cbsq::prepare_model(std::move(config))};
  *out = m;
  return CBSQ_OK;
}

}  // namespace

extern "C" {

const char* cbsq_version(void) { return "1.0.0"; }

const char* cbsq_last_error(void) { return last_error.c_str(); }

const char* cbsq_status_name(cbsq_status status) {
  switch (status) {
    case CBSQ_OK: return "ok";
    case CBSQ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CBSQ_ERR_CONFIG: return "configuration error";
    case CBSQ_ERR_NUMERICAL: return "numerical failure";
    case CBSQ_ERR_IO: return "i/o error";
    case CBSQ_ERR_VERIFICATION: return "verification failure";
    case CBSQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cbsq_status cbsq_model_from_config_file(const char* path, cbsq_model** out) {
  CBSQ_REQUIRE(path);
  CBSQ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { return make_model(cbsq::load_config_file(path), out); });
}

cbsq_status cbsq_model_from_config_text(const char* text, cbsq_model** out) {
  CBSQ_REQUIRE(text);
  CBSQ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { return make_model(cbsq::load_config(text), out); });
}

cbsq_status cbsq_model_randomize(cbsq_model* model, uint64_t seed) {
  CBSQ_REQUIRE(model);
  return guarded([&] {
    model->prepared = cbsq::prepare_model(model->prepared.config, seed);
    return CBSQ_OK;
  });
}

void cbsq_model_free(cbsq_model* model) { delete model; }

cbsq_status cbsq_model_mode_count(const cbsq_model* model, size_t* out) {
  CBSQ_REQUIRE(model);
  CBSQ_REQUIRE(out);
  *out = model->prepared.space.modes();
  return CBSQ_OK;
}

cbsq_status cbsq_model_composite_count(const cbsq_model* model, size_t* out) {
  CBSQ_REQUIRE(model);
  CBSQ_REQUIRE(out);
  *out = model->prepared.spectrum.size();
  return CBSQ_OK;
}

cbsq_status cbsq_model_n_max(const cbsq_model* model, int* out) {
  CBSQ_REQUIRE(model);
  CBSQ_REQUIRE(out);
  *out = model->prepared.config.n_max;
  return CBSQ_OK;
}

cbsq_status cbsq_model_continuum_edge(const cbsq_model* model, double* out) {
  CBSQ_REQUIRE(model);
  CBSQ_REQUIRE(out);
  *out = model->prepared.spectrum.continuum_edge();
  return CBSQ_OK;
}

cbsq_status cbsq_model_composite_energies(const cbsq_model* model, double* out, size_t capacity, size_t* count) {
  CBSQ_REQUIRE(model);
  CBSQ_REQUIRE(count);
  if (capacity > 0) CBSQ_REQUIRE(out);
  const auto& e = model->prepared.spectrum.energies();
  *count = e.size();
  for (size_t i = 0; i < e.size() && i < capacity; ++i) out[i] = e[i];
  return CBSQ_OK;
}

cbsq_status cbsq_sector_build(const cbsq_model* model, int constituents, int threads, cbsq_sector** out) {
  CBSQ_REQUIRE(model);
  CBSQ_REQUIRE(out);
  *out = nullptr;
  if (constituents < 0) return fail(CBSQ_ERR_INVALID_ARGUMENT, "cbsq_sector_build: constituents must be >= 0");
  return guarded([&] {
    *out = new cbsq_sector{cbsq::analyze_sector(model->prepared, constituents, 1, threads)};
    return CBSQ_OK;
  });
}

void cbsq_sector_free(cbsq_sector* sector) { delete sector; }

cbsq_status cbsq_sector_dimension(const cbsq_sector* sector, size_t* out) {
  CBSQ_REQUIRE(sector);
  CBSQ_REQUIRE(out);
  *out = sector->analysis.result.dimension;
  return CBSQ_OK;
}

cbsq_status cbsq_sector_max_asymmetry(const cbsq_sector* sector, double* out) {
  CBSQ_REQUIRE(sector);
  CBSQ_REQUIRE(out);
  *out = sector->analysis.result.max_asymmetry;
  return CBSQ_OK;
}

cbsq_status cbsq_sector_state(const cbsq_sector* sector, size_t index, char** out) {
  CBSQ_REQUIRE(sector);
  CBSQ_REQUIRE(out);
  const auto& basis = sector->analysis.hamiltonian.basis();
  if (index >= basis.size()) return fail(CBSQ_ERR_INVALID_ARGUMENT, "cbsq_sector_state: index out of range");
  return guarded([&] {
    const std::string s = basis[index].to_string();
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
    return CBSQ_OK;
  });
}

cbsq_status cbsq_sector_triplets(const cbsq_sector* sector, int term, size_t* rows, size_t* cols, double* values,
                                 size_t capacity, size_t* count) {
  CBSQ_REQUIRE(sector);
  CBSQ_REQUIRE(count);
  if (capacity > 0) {
    CBSQ_REQUIRE(rows);
    CBSQ_REQUIRE(cols);
    CBSQ_REQUIRE(values);
  }
  if (term < CBSQ_TERM_TOTAL || term > CBSQ_TERM_CCCC)
    return fail(CBSQ_ERR_INVALID_ARGUMENT, "cbsq_sector_triplets: unknown term " + std::to_string(term));
  return guarded([&] {
    const auto& h = sector->analysis.hamiltonian;
    const auto& m = term == CBSQ_TERM_TOTAL ? h.total() : h.term(cbsq::kAllTerms[static_cast<size_t>(term)]);
    const auto triplets = m.triplets();
    *count = triplets.size();
    for (size_t i = 0; i < triplets.size() && i < capacity; ++i) {
      rows[i] = triplets[i].row;
      cols[i] = triplets[i].col;
      values[i] = triplets[i].value;
    }
    return CBSQ_OK;
  });
}

cbsq_status cbsq_sector_lowest_eigenvalues(const cbsq_sector* sector, size_t k, double* out, size_t* count) {
  CBSQ_REQUIRE(sector);
  CBSQ_REQUIRE(count);
  if (k > 0) CBSQ_REQUIRE(out);
  return guarded([&] {
    const auto& total = sector->analysis.hamiltonian.total();
    const size_t n = std::min(k, total.dimension());
    std::vector<double> values;
    if (total.dimension() <= cbsq::kDenseSectorLimit) {
      const auto es = cbsq::dense_symmetric_eigen(total.to_dense());
      values.assign(es.values.begin(), es.values.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
      values = cbsq::sparse_lowest_eigen(total, n);
    }
    *count = values.size();
    std::copy(values.begin(), values.end(), out);
    return CBSQ_OK;
  });
}

cbsq_status cbsq_sector_ground_molecule_weight(const cbsq_sector* sector, double* out) {
  CBSQ_REQUIRE(sector);
  CBSQ_REQUIRE(out);
  const auto& w = sector->analysis.result.ground_molecule_weight;
  if (!w) return fail(CBSQ_ERR_INVALID_ARGUMENT, "cbsq_sector_ground_molecule_weight: not available for this sector");
  *out = *w;
  return CBSQ_OK;
}

cbsq_status cbsq_verify(const cbsq_model* model, int max_n, int threads, double* max_abs_diff,
                        size_t* pairs_checked) {
  CBSQ_REQUIRE(model);
  return guarded([&] {
    const auto r = cbsq::verify_equivalence(model->prepared.space, model->prepared.spectrum, max_n, threads);
    if (max_abs_diff != nullptr) *max_abs_diff = r.max_abs_diff;
    if (pairs_checked != nullptr) *pairs_checked = r.pairs_checked;
    if (r.max_abs_diff > cbsq::kVerificationTolerance)
      return fail(CBSQ_ERR_VERIFICATION, "oracle equivalence failed: max |sq - oracle| = " +
                                             std::to_string(r.max_abs_diff));
    return CBSQ_OK;
  });
}

cbsq_status cbsq_run_solve_pair(const cbsq_model* model, const char* out_dir) {
  CBSQ_REQUIRE(model);
  return guarded([&] {
    cbsq::write_text(directory(model, out_dir), "composite_spectrum.json",
                     cbsq::composite_spectrum_json(model->prepared));
    return CBSQ_OK;
  });
}

cbsq_status cbsq_run_spectrum(const cbsq_model* model, const char* out_dir, int threads) {
  CBSQ_REQUIRE(model);
  return guarded([&] {
    const auto report = cbsq::run_spectrum(model->prepared, threads);
    cbsq::write_report(report, directory(model, out_dir));
    return CBSQ_OK;
  });
}

cbsq_status cbsq_run_verify(const cbsq_model* model, const char* out_dir, int max_n, int threads,
                            double* max_abs_diff) {
  CBSQ_REQUIRE(model);
  return guarded([&] {
    const auto r = cbsq::verify_equivalence(model->prepared.space, model->prepared.spectrum, max_n, threads);
    cbsq::write_text(directory(model, out_dir), "verification.json", cbsq::verification_json(r));
    if (max_abs_diff != nullptr) *max_abs_diff = r.max_abs_diff;
    if (r.max_abs_diff > cbsq::kVerificationTolerance)
      return fail(CBSQ_ERR_VERIFICATION, "oracle equivalence failed: max |sq - oracle| = " +
                                             std::to_string(r.max_abs_diff));
    return CBSQ_OK;
  });
}

cbsq_status cbsq_run_export(const cbsq_model* model, const char* out_dir, int threads) {
  CBSQ_REQUIRE(model);
  return guarded([&] {
    cbsq::export_matrices(model->prepared, directory(model, out_dir), threads);
    return CBSQ_OK;
  });
}

void cbsq_string_free(char* s) { delete[] s; }

}  // extern "C"
