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

#include "tunebench/tunebench.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "ingestion.hpp"
#include "json.hpp"
#include "models.hpp"
#include "numeric_format.hpp"
#include "report.hpp"
#include "synthetic.hpp"
#include "tuning.hpp"

struct tb_dataset {
  tunebench::Dataset value;
};
struct tb_grid {
  tunebench::BenchmarkGrid value;
};
struct tb_trace {
  tunebench::SearchTrace value;
};
struct tb_model {
  tunebench::TrainedModel value;
};

namespace {

using tunebench::Error;
using tunebench::ErrorCode;

thread_local std::string g_last_error;

static_assert(static_cast<int>(ErrorCode::kInvalidArgument) == TB_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::kParse) == TB_ERR_PARSE);
static_assert(static_cast<int>(ErrorCode::kValidation) == TB_ERR_VALIDATION);
static_assert(static_cast<int>(ErrorCode::kIo) == TB_ERR_IO);
static_assert(static_cast<int>(ErrorCode::kAuth) == TB_ERR_AUTH);
static_assert(static_cast<int>(ErrorCode::kNotFound) == TB_ERR_NOT_FOUND);
static_assert(static_cast<int>(ErrorCode::kNetwork) == TB_ERR_NETWORK);
static_assert(static_cast<int>(ErrorCode::kTraining) == TB_ERR_TRAINING);
static_assert(static_cast<int>(ErrorCode::kInternal) == TB_ERR_INTERNAL);

template <typename F>
tb_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return TB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<tb_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return TB_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TB_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, what);
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void emit(char** out, const std::string& s) {
  require(out != nullptr, "output pointer is null");
  *out = to_c_string(s);
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

tunebench::ClassifierSpec parse_spec(const char* spec_json) {
  require(spec_json != nullptr, "spec JSON is null");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(spec_json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("spec JSON: ") + e.what());
  }
  return tunebench::spec_from_json(j);
}

}  // namespace

extern "C" {

const char* tb_version(void) { return "0.1.0"; }

const char* tb_status_name(tb_status status) {
  switch (status) {
    case TB_OK: return "ok";
    case TB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TB_ERR_PARSE: return "parse error";
    case TB_ERR_VALIDATION: return "validation error";
    case TB_ERR_IO: return "I/O error";
    case TB_ERR_AUTH: return "authentication error";
    case TB_ERR_NOT_FOUND: return "not found";
    case TB_ERR_NETWORK: return "network error";
    case TB_ERR_TRAINING: return "training error";
    case TB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tb_last_error(void) { return g_last_error.c_str(); }

void tb_string_free(char* s) { std::free(s); }

tb_status tb_format_percent(double fraction, char** out) {
  return guarded([&] { emit(out, tunebench::format_percent(fraction)); });
}

tb_status tb_dataset_parse(const char* csv, size_t length, const char* name,
                           tb_dataset** out) {
  return guarded([&] {
    require(csv != nullptr && out != nullptr, "null argument");
    auto d = tunebench::parse_dataset(std::string_view(csv, length), name ? name : "");
    *out = new tb_dataset{std::move(d)};
  });
}

tb_status tb_dataset_load(const char* path, const char* name, tb_dataset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    auto d = tunebench::load_dataset_file(path, name ? name : "");
    *out = new tb_dataset{std::move(d)};
  });
}

void tb_dataset_free(tb_dataset* dataset) { delete dataset; }

const char* tb_dataset_name(const tb_dataset* dataset) {
  return dataset ? dataset->value.name.c_str() : "";
}

size_t tb_dataset_size(const tb_dataset* dataset) {
  return dataset ? dataset->value.size() : 0;
}

size_t tb_dataset_count(const tb_dataset* dataset, int label) {
  if (!dataset || (label != 0 && label != 1)) return 0;
  return dataset->value.count(static_cast<tunebench::Label>(label));
}

const char* tb_dataset_track_id(const tb_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->value.size()) return nullptr;
  return dataset->value.instances[index].id.c_str();
}

tb_status tb_dataset_row(const tb_dataset* dataset, size_t index, double* features,
                         int* label) {
  return guarded([&] {
    require(dataset != nullptr && features != nullptr, "null argument");
    require(index < dataset->value.size(), "row index out of range");
    const auto& row = dataset->value.instances[index];
    const auto values = row.features.to_array();
    std::copy(values.begin(), values.end(), features);
    if (label) *label = tunebench::to_int(row.liked);
  });
}

tb_status tb_dataset_write_csv(const tb_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset != nullptr, "dataset is null");
    emit(out, tunebench::write_dataset(dataset->value));
  });
}

tb_status tb_dataset_summary_markdown(const tb_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset != nullptr, "dataset is null");
    const auto s = tunebench::summarize(dataset->value);
    emit(out, tunebench::render_summary_markdown(s, dataset->value.name));
  });
}

tb_status tb_dataset_warnings(const tb_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset != nullptr, "dataset is null");
    emit(out, join_lines(tunebench::dataset_warnings(dataset->value)));
  });
}

tb_status tb_dataset_synthesize(int user, size_t liked, size_t disliked,
                                double relative_sigma, uint64_t seed, const char* name,
                                tb_dataset** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    tunebench::SyntheticOptions options;
    options.liked = liked;
    options.disliked = disliked;
    options.relative_sigma = relative_sigma;
    options.seed = seed;
    auto d = tunebench::synthesize_dataset(tunebench::listener_means(user), options,
                                           name ? name : "");
    *out = new tb_dataset{std::move(d)};
  });
}

void tb_fetch_options_init(tb_fetch_options* options) {
  if (!options) return;
  const tunebench::FetchConfig defaults;
  options->fixture_dir = nullptr;
  options->token = nullptr;
  options->base_url = nullptr;
  options->batch_size = defaults.batch_size;
  options->max_retries = defaults.retry.max_retries;
  options->initial_backoff_seconds = defaults.retry.initial_backoff;
}

tb_status tb_ingest(const char* liked_playlist, const char* disliked_playlist,
                    const tb_fetch_options* options, const char* name, tb_dataset** out,
                    char** report) {
  return guarded([&] {
    require(liked_playlist && disliked_playlist && options && out, "null argument");
    tunebench::FetchConfig cfg;
    cfg.fixture_dir = options->fixture_dir ? options->fixture_dir : "";
    cfg.token = options->token ? options->token : "";
    cfg.batch_size = options->batch_size;
    cfg.retry.max_retries = options->max_retries;
    cfg.retry.initial_backoff = options->initial_backoff_seconds;
    tunebench::validate_fetch_config(cfg);
    const auto transport = tunebench::make_http_transport(
        options->base_url ? options->base_url : "https://api.spotify.com");

    std::vector<std::string> notes;
    auto fetch = [&](const char* id, tunebench::Label label) {
      auto r = tunebench::fetch_playlist_features({id, label}, cfg, *transport);
      for (const auto& s : r.skipped) notes.push_back("skipped: playlist " + std::string(id) + ", " + s);
      for (auto& w : r.warnings) notes.push_back(std::move(w));
      return std::move(r.records);
    };
    const auto liked = fetch(liked_playlist, tunebench::Label::kLiked);
    const auto disliked = fetch(disliked_playlist, tunebench::Label::kDisliked);
    auto d = tunebench::assemble_dataset(liked, disliked, name ? name : "", &notes);
    for (auto& w : tunebench::dataset_warnings(d)) notes.push_back(std::move(w));
    if (report) *report = to_c_string(join_lines(notes));
    *out = new tb_dataset{std::move(d)};
  });
}

tb_status tb_default_spec_json(const char* algorithm_tag, char** out) {
  return guarded([&] {
    require(algorithm_tag != nullptr, "algorithm tag is null");
    const auto a = tunebench::parse_algorithm_tag(algorithm_tag);
    if (!a) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown algorithm \"" + std::string(algorithm_tag) +
                      "\" (expected lr, nb, smo, mlp, knn or rf)");
    }
    emit(out, tunebench::spec_to_json(tunebench::default_spec(*a)).dump());
  });
}

tb_status tb_normalize_spec_json(const char* spec_json, char** out) {
  return guarded([&] { emit(out, tunebench::spec_to_json(parse_spec(spec_json)).dump()); });
}

tb_status tb_model_fit(const char* spec_json, const tb_dataset* train, uint64_t seed,
                       int standardize, tb_model** out) {
  return guarded([&] {
    require(train != nullptr && out != nullptr, "null argument");
    auto m = tunebench::fit(parse_spec(spec_json), train->value, seed,
                            tunebench::FitOptions{standardize != 0});
    *out = new tb_model{std::move(m)};
  });
}

tb_status tb_model_predict(const tb_model* model, const double* features, int* label,
                           double* score) {
  return guarded([&] {
    require(model != nullptr && features != nullptr, "null argument");
    const auto p = tunebench::predict(
        model->value, std::span<const double>(features, tunebench::kFeatureCount));
    if (label) *label = p.label;
    if (score) *score = p.score;
  });
}

tb_status tb_model_to_json(const tb_model* model, char** out) {
  return guarded([&] {
    require(model != nullptr, "model is null");
    emit(out, tunebench::model_to_json(model->value));
  });
}

tb_status tb_model_from_json(const char* json, size_t length, tb_model** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    auto m = tunebench::model_from_json(std::string_view(json, length));
    *out = new tb_model{std::move(m)};
  });
}

void tb_model_free(tb_model* model) { delete model; }

void tb_benchmark_options_init(tb_benchmark_options* options) {
  if (!options) return;
  options->folds = 10;
  options->seed = 42;
  options->standardize = 0;
}

tb_status tb_benchmark_run(const tb_dataset* const* datasets, size_t n_datasets,
                           const char* specs_json, const tb_benchmark_options* options,
                           tb_grid** out) {
  return guarded([&] {
    require(datasets != nullptr && specs_json != nullptr && options != nullptr &&
                out != nullptr,
            "null argument");
    require(n_datasets > 0, "at least one dataset is required");
    nlohmann::json list;
    try {
      list = nlohmann::json::parse(specs_json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("spec list JSON: ") + e.what());
    }
    require(list.is_array() && !list.empty(), "spec list must be a non-empty JSON array");
    std::vector<tunebench::ClassifierSpec> specs;
    for (const auto& s : list) specs.push_back(tunebench::spec_from_json(s));
    std::vector<tunebench::Dataset> data;
    for (size_t i = 0; i < n_datasets; ++i) {
      require(datasets[i] != nullptr, "dataset is null");
      data.push_back(datasets[i]->value);
    }
    auto grid = tunebench::run_benchmark(specs, data, options->folds, options->seed,
                                         tunebench::CvOptions{options->standardize != 0});
    *out = new tb_grid{std::move(grid)};
  });
}

size_t tb_grid_cell_count(const tb_grid* grid) { return grid ? grid->value.cells.size() : 0; }

size_t tb_grid_failed_cells(const tb_grid* grid) {
  return grid ? grid->value.failed_cells() : 0;
}

tb_status tb_grid_render(const tb_grid* grid, const char* format, char** out) {
  return guarded([&] {
    require(grid != nullptr && format != nullptr, "null argument");
    const auto f = tunebench::parse_report_format(format);
    if (!f) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown report format \"" + std::string(format) + "\" (md, csv, json)");
    }
    emit(out, tunebench::render_report(grid->value, *f));
  });
}

tb_status tb_grid_from_json(const char* json, size_t length, tb_grid** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    auto g = tunebench::grid_from_json(std::string_view(json, length));
    *out = new tb_grid{std::move(g)};
  });
}

void tb_grid_free(tb_grid* grid) { delete grid; }

void tb_tune_options_init(tb_tune_options* options) {
  if (!options) return;
  options->n_iter = 0;
  options->folds = 10;
  options->seed = 42;
  options->strategy = nullptr;
  options->standardize = 0;
  options->record_timings = 0;
  options->space_json = nullptr;
  options->base_spec_json = nullptr;
}

tb_status tb_builtin_space_json(char** out) {
  return guarded([&] { emit(out, tunebench::space_to_json(tunebench::builtin_rf_space())); });
}

tb_status tb_tune(const tb_dataset* dataset, const tb_tune_options* options, tb_trace** out) {
  return guarded([&] {
    require(dataset != nullptr && options != nullptr && out != nullptr, "null argument");
    auto space = options->space_json ? tunebench::space_from_json(options->space_json)
                                     : tunebench::builtin_rf_space();
    if (options->n_iter > 0) space.n_iter = options->n_iter;
    space.k = options->folds;
    tunebench::RandomForestSpec base;
    if (options->base_spec_json) {
      const auto spec = parse_spec(options->base_spec_json);
      const auto* rf = std::get_if<tunebench::RandomForestSpec>(&spec);
      require(rf != nullptr, "base spec must be a random forest (\"algorithm\": \"rf\")");
      base = *rf;
    }
    tunebench::SearchOptions so;
    if (options->strategy) {
      const auto s = tunebench::parse_strategy(options->strategy);
      if (!s) {
        throw Error(ErrorCode::kInvalidArgument, "unknown strategy \"" +
                                                     std::string(options->strategy) +
                                                     "\" (random, surrogate)");
      }
      so.strategy = *s;
    }
    so.standardize = options->standardize != 0;
    so.record_timings = options->record_timings != 0;
    auto trace = tunebench::search(space, dataset->value, base, options->seed, so);
    *out = new tb_trace{std::move(trace)};
  });
}

tb_status tb_trace_to_json(const tb_trace* trace, char** out) {
  return guarded([&] {
    require(trace != nullptr, "trace is null");
    emit(out, tunebench::trace_to_json(trace->value));
  });
}

tb_status tb_trace_from_json(const char* json, size_t length, tb_trace** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    auto t = tunebench::trace_from_json(std::string_view(json, length));
    *out = new tb_trace{std::move(t)};
  });
}

size_t tb_trace_size(const tb_trace* trace) {
  return trace ? trace->value.candidates.size() : 0;
}

void tb_trace_free(tb_trace* trace) { delete trace; }

tb_status tb_trace_verdict(const tb_trace* trace, tb_verdict* out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "null argument");
    const auto v = tunebench::verdict(trace->value);
    out->tuned_wins = v.kind == tunebench::VerdictKind::kTunedWins ? 1 : 0;
    out->has_best = trace->value.best ? 1 : 0;
    out->best_index = trace->value.best.value_or(0);
    out->best_score = v.tuned_score.value_or(0.0);
    out->default_score = v.default_score;
    out->tied = v.tied ? 1 : 0;
  });
}

const char* tb_verdict_text(const tb_verdict* verdict) {
  return verdict && verdict->tuned_wins ? "tuned wins" : "default wins";
}

tb_status tb_trace_best_params_json(const tb_trace* trace, char** out) {
  return guarded([&] {
    require(trace != nullptr, "trace is null");
    const auto& t = trace->value;
    if (!t.best) throw Error(ErrorCode::kTraining, "every candidate failed");
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [name, value] : t.candidates[*t.best].params) {
      j[name] = tunebench::param_value_to_json(value);
    }
    emit(out, j.dump());
  });
}

}  // extern "C"
