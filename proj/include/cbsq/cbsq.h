/* Copyright 2026 The cbsq Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CBSQ_CBSQ_H
#define CBSQ_CBSQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CBSQ_BUILDING_LIBRARY)
#define CBSQ_API __declspec(dllexport)
#else
#define CBSQ_API __declspec(dllimport)
#endif
#else
#define CBSQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; on failure cbsq_last_error() describes it.
 * The message is per thread and valid until the next failing call. */
typedef enum cbsq_status {
  CBSQ_OK = 0,
  CBSQ_ERR_INVALID_ARGUMENT = 1,
  CBSQ_ERR_CONFIG = 2,
  CBSQ_ERR_NUMERICAL = 3,
  CBSQ_ERR_IO = 4,
  CBSQ_ERR_VERIFICATION = 5,
  CBSQ_ERR_INTERNAL = 6
} cbsq_status;

/* Term selectors for cbsq_sector_triplets. */
enum {
  CBSQ_TERM_SS = 0,
  CBSQ_TERM_SSSS = 1,
  CBSQ_TERM_CC = 2,
  CBSQ_TERM_CSS = 3,
  CBSQ_TERM_SSC = 4,
  CBSQ_TERM_SCSC = 5,
  CBSQ_TERM_CCCC = 6,
  CBSQ_TERM_TOTAL = -1
};

typedef struct cbsq_model cbsq_model;
typedef struct cbsq_sector cbsq_sector;

CBSQ_API const char* cbsq_version(void);
CBSQ_API const char* cbsq_last_error(void);
CBSQ_API const char* cbsq_status_name(cbsq_status status);

/* A model owns its configuration, mode space and composite spectrum. */
CBSQ_API cbsq_status cbsq_model_from_config_file(const char* path, cbsq_model** out);
CBSQ_API cbsq_status cbsq_model_from_config_text(const char* text, cbsq_model** out);
/* Replaces the tensors with a seeded random model of the same mode count
 * and re-solves the composite spectrum under the configured policy. */
CBSQ_API cbsq_status cbsq_model_randomize(cbsq_model* model, uint64_t seed);
CBSQ_API void cbsq_model_free(cbsq_model* model);

CBSQ_API cbsq_status cbsq_model_mode_count(const cbsq_model* model, size_t* out);
CBSQ_API cbsq_status cbsq_model_composite_count(const cbsq_model* model, size_t* out);
CBSQ_API cbsq_status cbsq_model_n_max(const cbsq_model* model, int* out);
CBSQ_API cbsq_status cbsq_model_continuum_edge(const cbsq_model* model, double* out);
/* Writes min(capacity, count) energies, ascending; *count receives the total. */
CBSQ_API cbsq_status cbsq_model_composite_energies(const cbsq_model* model, double* out, size_t capacity,
                                                   size_t* count);

CBSQ_API cbsq_status cbsq_sector_build(const cbsq_model* model, int constituents, int threads, cbsq_sector** out);
CBSQ_API void cbsq_sector_free(cbsq_sector* sector);
CBSQ_API cbsq_status cbsq_sector_dimension(const cbsq_sector* sector, size_t* out);
CBSQ_API cbsq_status cbsq_sector_max_asymmetry(const cbsq_sector* sector, double* out);
/* Pretty-printed basis state; release with cbsq_string_free. */
CBSQ_API cbsq_status cbsq_sector_state(const cbsq_sector* sector, size_t index, char** out);
/* Coordinate triples of one term block (or CBSQ_TERM_TOTAL). Any output
 * array may be NULL when capacity is 0, which just reports *count. */
CBSQ_API cbsq_status cbsq_sector_triplets(const cbsq_sector* sector, int term, size_t* rows, size_t* cols,
                                          double* values, size_t capacity, size_t* count);
CBSQ_API cbsq_status cbsq_sector_lowest_eigenvalues(const cbsq_sector* sector, size_t k, double* out,
                                                    size_t* count);
/* Fails with CBSQ_ERR_INVALID_ARGUMENT for the vacuum or Lanczos-sized sectors. */
CBSQ_API cbsq_status cbsq_sector_ground_molecule_weight(const cbsq_sector* sector, double* out);

/* Oracle equivalence over sectors 0..max_n; CBSQ_ERR_VERIFICATION when the
 * largest deviation exceeds 1e-10 (outputs are still filled). */
CBSQ_API cbsq_status cbsq_verify(const cbsq_model* model, int max_n, int threads, double* max_abs_diff,
                                 size_t* pairs_checked);

/* File-producing runs. out_dir NULL selects the configured directory. */
CBSQ_API cbsq_status cbsq_run_solve_pair(const cbsq_model* model, const char* out_dir);
CBSQ_API cbsq_status cbsq_run_spectrum(const cbsq_model* model, const char* out_dir, int threads);
CBSQ_API cbsq_status cbsq_run_verify(const cbsq_model* model, const char* out_dir, int max_n, int threads,
                                     double* max_abs_diff);
CBSQ_API cbsq_status cbsq_run_export(const cbsq_model* model, const char* out_dir, int threads);

CBSQ_API void cbsq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CBSQ_CBSQ_H */
