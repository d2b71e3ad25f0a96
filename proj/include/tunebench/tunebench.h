/*
 * Copyright 2026 The tunebench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TUNEBENCH_TUNEBENCH_H_
#define TUNEBENCH_TUNEBENCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TUNEBENCH_BUILDING_LIBRARY)
#define TB_API __attribute__((visibility("default")))
#else
#define TB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Status codes. Every fallible call returns one of these; on failure the
 * message is available from tb_last_error() on the same thread until the
 * next call into the library.
 */
typedef enum tb_status {
  TB_OK = 0,
  TB_ERR_INVALID_ARGUMENT = 1,
  TB_ERR_PARSE = 2,
  TB_ERR_VALIDATION = 3,
  TB_ERR_IO = 4,
  TB_ERR_AUTH = 5,
  TB_ERR_NOT_FOUND = 6,
  TB_ERR_NETWORK = 7,
  TB_ERR_TRAINING = 8,
  TB_ERR_INTERNAL = 9
} tb_status;

typedef struct tb_dataset tb_dataset;
typedef struct tb_grid tb_grid;
typedef struct tb_trace tb_trace;
typedef struct tb_model tb_model;

TB_API const char* tb_version(void);
TB_API const char* tb_status_name(tb_status status);
TB_API const char* tb_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
TB_API void tb_string_free(char* s);

/* Whole-percent text such as "84%", rounding half up on the decimal value. */
TB_API tb_status tb_format_percent(double fraction, char** out);

/* ---- Datasets ---------------------------------------------------------- */

/* Canonical CSV: header row, then one track per row, liked column last. */
TB_API tb_status tb_dataset_parse(const char* csv, size_t length, const char* name,
                                  tb_dataset** out);
TB_API tb_status tb_dataset_load(const char* path, const char* name, tb_dataset** out);
TB_API void tb_dataset_free(tb_dataset* dataset);

TB_API const char* tb_dataset_name(const tb_dataset* dataset);
TB_API size_t tb_dataset_size(const tb_dataset* dataset);
/* label is 1 for liked, 0 for disliked. */
TB_API size_t tb_dataset_count(const tb_dataset* dataset, int label);
TB_API const char* tb_dataset_track_id(const tb_dataset* dataset, size_t index);
/* Copies the 12 attribute values of row `index` in column order. */
TB_API tb_status tb_dataset_row(const tb_dataset* dataset, size_t index, double* features,
                                int* label);

TB_API tb_status tb_dataset_write_csv(const tb_dataset* dataset, char** out);
/* Per-class mean table; fails with TB_ERR_INVALID_ARGUMENT on one class. */
TB_API tb_status tb_dataset_summary_markdown(const tb_dataset* dataset, char** out);
/* Soft warnings, one per line; empty string if none. */
TB_API tb_status tb_dataset_warnings(const tb_dataset* dataset, char** out);

/*
 * Gaussian sample around the reference class means of listener `user`
 * (1 to 4). relative_sigma is a fraction of each attribute's range.
 */
TB_API tb_status tb_dataset_synthesize(int user, size_t liked, size_t disliked,
                                       double relative_sigma, uint64_t seed,
                                       const char* name, tb_dataset** out);

/* ---- Ingestion --------------------------------------------------------- */

typedef struct tb_fetch_options {
  /* Directory of <playlist>.features.json files; NULL or "" for live mode. */
  const char* fixture_dir;
  /* Bearer token, live mode only. */
  const char* token;
  /* Defaults to https://api.spotify.com when NULL. */
  const char* base_url;
  size_t batch_size;
  int max_retries;
  double initial_backoff_seconds;
} tb_fetch_options;

TB_API void tb_fetch_options_init(tb_fetch_options* options);

/*
 * Builds a dataset from one liked and one disliked playlist. `report`, if not
 * NULL, receives skipped-track and validation warnings, one per line.
 */
TB_API tb_status tb_ingest(const char* liked_playlist, const char* disliked_playlist,
                           const tb_fetch_options* options, const char* name,
                           tb_dataset** out, char** report);

/* ---- Specs and models -------------------------------------------------- */

/* Tags: lr, nb, smo, mlp, knn, rf. */
TB_API tb_status tb_default_spec_json(const char* algorithm_tag, char** out);
/* Fills omitted fields with defaults and validates. */
TB_API tb_status tb_normalize_spec_json(const char* spec_json, char** out);

TB_API tb_status tb_model_fit(const char* spec_json, const tb_dataset* train, uint64_t seed,
                              int standardize, tb_model** out);
TB_API tb_status tb_model_predict(const tb_model* model, const double* features,
                                  int* label, double* score);
TB_API tb_status tb_model_to_json(const tb_model* model, char** out);
TB_API tb_status tb_model_from_json(const char* json, size_t length, tb_model** out);
TB_API void tb_model_free(tb_model* model);

/* ---- Benchmark --------------------------------------------------------- */

typedef struct tb_benchmark_options {
  size_t folds;
  uint64_t seed;
  int standardize;
} tb_benchmark_options;

TB_API void tb_benchmark_options_init(tb_benchmark_options* options);

/*
 * Cross-validates every spec in `specs_json` (a JSON array of spec objects)
 * on every dataset. A failing cell is recorded in the grid, not returned.
 */
TB_API tb_status tb_benchmark_run(const tb_dataset* const* datasets, size_t n_datasets,
                                  const char* specs_json,
                                  const tb_benchmark_options* options, tb_grid** out);
TB_API size_t tb_grid_cell_count(const tb_grid* grid);
TB_API size_t tb_grid_failed_cells(const tb_grid* grid);
/* format: "md", "csv" or "json". */
TB_API tb_status tb_grid_render(const tb_grid* grid, const char* format, char** out);
TB_API tb_status tb_grid_from_json(const char* json, size_t length, tb_grid** out);
TB_API void tb_grid_free(tb_grid* grid);

/* ---- Tuning ------------------------------------------------------------ */

typedef struct tb_tune_options {
  /* 0 keeps the space's own value (32 for the built-in space). */
  size_t n_iter;
  size_t folds;
  uint64_t seed;
  /* "random" (default when NULL) or "surrogate". */
  const char* strategy;
  int standardize;
  int record_timings;
  /* Search space JSON; NULL for the built-in forest space. */
  const char* space_json;
  /* Forest spec the candidates override; NULL for defaults. */
  const char* base_spec_json;
} tb_tune_options;

TB_API void tb_tune_options_init(tb_tune_options* options);
TB_API tb_status tb_builtin_space_json(char** out);

TB_API tb_status tb_tune(const tb_dataset* dataset, const tb_tune_options* options,
                         tb_trace** out);
TB_API tb_status tb_trace_to_json(const tb_trace* trace, char** out);
TB_API tb_status tb_trace_from_json(const char* json, size_t length, tb_trace** out);
TB_API size_t tb_trace_size(const tb_trace* trace);
TB_API void tb_trace_free(tb_trace* trace);

typedef struct tb_verdict {
  /* 1 if the best candidate beats the default; ties go to the default. */
  int tuned_wins;
  int has_best;
  size_t best_index;
  double best_score;
  double default_score;
  int tied;
} tb_verdict;

TB_API tb_status tb_trace_verdict(const tb_trace* trace, tb_verdict* out);
/* "tuned wins" or "default wins". */
TB_API const char* tb_verdict_text(const tb_verdict* verdict);
/* Parameters of the best candidate as a JSON object. */
TB_API tb_status tb_trace_best_params_json(const tb_trace* trace, char** out);

#ifdef __cplusplus
}
#endif

#endif /* TUNEBENCH_TUNEBENCH_H_ */
