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

// Command-line front end. Talks to the library only through the C API.

#include <tunebench/tunebench.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using tunebench::cli::CliConfig;
using tunebench::cli::ConfigError;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(tb_status status, const std::string& context) {
  if (status == TB_OK) return;
  throw CommandError(context + ": " + tb_status_name(status) + ": " + tb_last_error());
}

struct HandleDeleter {
  void operator()(tb_dataset* p) const { tb_dataset_free(p); }
  void operator()(tb_grid* p) const { tb_grid_free(p); }
  void operator()(tb_trace* p) const { tb_trace_free(p); }
  void operator()(tb_model* p) const { tb_model_free(p); }
  void operator()(char* p) const { tb_string_free(p); }
};
template <typename T>
using Handle = std::unique_ptr<T, HandleDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  Handle<char> owner(s);
  return s ? std::string(s) : std::string();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temp file and renames it over the target.
void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CommandError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw CommandError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CommandError("cannot replace " + path.string());
  }
}

void print_lines_to_stderr(const std::string& lines) {
  std::istringstream in(lines);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) std::cerr << "warning: " << line << "\n";
  }
}

Handle<tb_dataset> load_dataset(const std::string& path, const std::string& name) {
  tb_dataset* d = nullptr;
  check(tb_dataset_load(path.c_str(), name.c_str(), &d), path);
  return Handle<tb_dataset>(d);
}

std::string percent(double fraction) {
  char* s = nullptr;
  check(tb_format_percent(fraction, &s), "format");
  return take(s);
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string liked;
  std::string disliked;
  std::string fixture;
  std::string token;
  std::string out;
  std::string name;
  std::string base_url;
  std::size_t batch_size = 100;
  int max_retries = 5;
};

int run_ingest(const IngestArgs& a) {
  std::string token = a.token;
  if (a.fixture.empty() && token.empty()) {
    if (const char* env = std::getenv("SPOTIFY_TOKEN")) token = env;
    if (token.empty()) {
      throw CommandError(
          "live ingestion needs an access token: set SPOTIFY_TOKEN or pass --token "
          "(or use --fixture DIR for offline files)");
    }
  }
  tb_fetch_options options;
  tb_fetch_options_init(&options);
  options.fixture_dir = a.fixture.empty() ? nullptr : a.fixture.c_str();
  options.token = token.empty() ? nullptr : token.c_str();
  options.base_url = a.base_url.empty() ? nullptr : a.base_url.c_str();
  options.batch_size = a.batch_size;
  options.max_retries = a.max_retries;

  const std::string name = a.name.empty() ? fs::path(a.out).stem().string() : a.name;
  tb_dataset* raw = nullptr;
  char* report = nullptr;
  const auto status =
      tb_ingest(a.liked.c_str(), a.disliked.c_str(), &options, name.c_str(), &raw, &report);
  print_lines_to_stderr(take(report));
  check(status, "ingest");
  Handle<tb_dataset> d(raw);

  char* csv = nullptr;
  check(tb_dataset_write_csv(d.get(), &csv), "write");
  write_atomic(a.out, take(csv));
  std::cout << "wrote " << a.out << ": " << tb_dataset_size(d.get()) << " instances ("
            << tb_dataset_count(d.get(), 1) << " liked, " << tb_dataset_count(d.get(), 0)
            << " disliked)\n";
  return 0;
}

// ---- summarize ------------------------------------------------------------

int run_summarize(const std::string& path, const std::string& name_flag) {
  const auto [stem_name, file] = tunebench::cli::parse_dataset_arg(path);
  const auto d = load_dataset(file, name_flag.empty() ? stem_name : name_flag);
  char* warnings = nullptr;
  check(tb_dataset_warnings(d.get(), &warnings), file);
  print_lines_to_stderr(take(warnings));
  char* table = nullptr;
  check(tb_dataset_summary_markdown(d.get(), &table), file);
  std::cout << take(table);
  return 0;
}

// ---- benchmark ------------------------------------------------------------

std::string build_specs_json(const CliConfig& cfg) {
  json specs = json::array();
  for (const auto& tag : cfg.algorithms) {
    char* s = nullptr;
    check(tb_default_spec_json(tag.c_str(), &s), "spec " + tag);
    auto spec = json::parse(take(s));
    if (cfg.spec_overrides.contains(tag)) {
      for (const auto& [k, v] : cfg.spec_overrides.at(tag).items()) spec[k] = v;
    }
    char* normalized = nullptr;
    check(tb_normalize_spec_json(spec.dump().c_str(), &normalized), "[spec." + tag + "]");
    specs.push_back(json::parse(take(normalized)));
  }
  return specs.dump();
}

struct BenchmarkArgs {
  std::vector<std::string> data;
  std::string algos;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  bool standardize = false;
  std::string out_dir;
  std::string formats;
  std::string config;
  std::string save_models;
};

int run_benchmark(const BenchmarkArgs& a, const CLI::App& cmd) {
  CliConfig cfg;
  if (!a.config.empty()) {
    try {
      cfg = tunebench::cli::apply_config(
          tunebench::cli::parse_config_text(read_text(a.config)));
    } catch (const ConfigError& e) {
      throw ConfigError(a.config + ": " + e.what());
    }
  }
  if (!a.data.empty()) {
    cfg.datasets.clear();
    for (const auto& d : a.data) cfg.datasets.push_back(tunebench::cli::parse_dataset_arg(d));
  }
  if (cmd.count("--algos")) cfg.algorithms = tunebench::cli::parse_algorithm_list(a.algos);
  if (cmd.count("--folds")) cfg.folds = a.folds;
  if (cmd.count("--seed")) cfg.seed = a.seed;
  if (cmd.count("--standardize")) cfg.standardize = a.standardize;
  if (cmd.count("--out-dir")) cfg.out_dir = a.out_dir;
  if (cmd.count("--formats")) {
    cfg.formats.clear();
    std::stringstream ss(a.formats);
    for (std::string f; std::getline(ss, f, ',');) cfg.formats.push_back(f);
  }
  if (cfg.datasets.empty()) throw CommandError("no datasets given (--data or [datasets])");
  if (cfg.algorithms.empty()) throw CommandError("no algorithms selected");
  if (cfg.folds < 2) throw CommandError("--folds must be at least 2");
  for (const auto& f : cfg.formats) {
    if (f != "md" && f != "csv" && f != "json") {
      throw CommandError("unknown report format \"" + f + "\" (md, csv, json)");
    }
  }

  std::vector<Handle<tb_dataset>> datasets;
  std::vector<const tb_dataset*> views;
  for (const auto& [name, path] : cfg.datasets) {
    datasets.push_back(load_dataset(path, name));
    views.push_back(datasets.back().get());
    char* warnings = nullptr;
    check(tb_dataset_warnings(views.back(), &warnings), path);
    print_lines_to_stderr(take(warnings));
  }
  const auto specs = build_specs_json(cfg);

  tb_benchmark_options options;
  tb_benchmark_options_init(&options);
  options.folds = cfg.folds;
  options.seed = cfg.seed;
  options.standardize = cfg.standardize ? 1 : 0;
  tb_grid* raw = nullptr;
  check(tb_benchmark_run(views.data(), views.size(), specs.c_str(), &options, &raw),
        "benchmark");
  Handle<tb_grid> grid(raw);

  for (const auto& f : cfg.formats) {
    char* text = nullptr;
    check(tb_grid_render(grid.get(), f.c_str(), &text), "render " + f);
    const auto path = fs::path(cfg.out_dir) / ("report." + f);
    write_atomic(path, take(text));
    std::cerr << "wrote " << path.string() << "\n";
  }
  char* md = nullptr;
  check(tb_grid_render(grid.get(), "md", &md), "render md");
  std::cout << take(md);

  if (!a.save_models.empty()) {
    const auto list = json::parse(specs);
    for (std::size_t d = 0; d < views.size(); ++d) {
      for (const auto& spec : list) {
        tb_model* m = nullptr;
        const auto tag = spec.at("algorithm").get<std::string>();
        const auto status = tb_model_fit(spec.dump().c_str(), views[d], cfg.seed,
                                         cfg.standardize ? 1 : 0, &m);
        if (status != TB_OK) {
          std::cerr << "warning: model " << tag << " on " << cfg.datasets[d].first
                    << " not saved: " << tb_last_error() << "\n";
          continue;
        }
        Handle<tb_model> model(m);
        char* text = nullptr;
        check(tb_model_to_json(model.get(), &text), "model " + tag);
        write_atomic(fs::path(a.save_models) / (cfg.datasets[d].first + "." + tag + ".model.json"),
                     take(text));
      }
    }
  }

  const auto cells = tb_grid_cell_count(grid.get());
  const auto failed = tb_grid_failed_cells(grid.get());
  if (failed > 0) std::cerr << failed << " of " << cells << " cells failed\n";
  return failed == cells ? kExitFailure : 0;
}

// ---- tune -----------------------------------------------------------------

struct TuneArgs {
  std::string data;
  std::size_t n_iter = 0;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  std::string space;
  std::string strategy = "random";
  std::string trace_out = "trace.json";
  std::string base_spec;
  bool standardize = false;
  bool with_timings = false;
};

int run_tune(const TuneArgs& a) {
  const auto [name, path] = tunebench::cli::parse_dataset_arg(a.data);
  const auto d = load_dataset(path, name);
  const std::string space = a.space.empty() ? std::string() : read_text(a.space);
  const std::string base = a.base_spec.empty() ? std::string() : read_text(a.base_spec);

  tb_tune_options options;
  tb_tune_options_init(&options);
  options.n_iter = a.n_iter;
  options.folds = a.folds;
  options.seed = a.seed;
  options.strategy = a.strategy.c_str();
  options.standardize = a.standardize ? 1 : 0;
  options.record_timings = a.with_timings ? 1 : 0;
  options.space_json = space.empty() ? nullptr : space.c_str();
  options.base_spec_json = base.empty() ? nullptr : base.c_str();
  tb_trace* raw = nullptr;
  check(tb_tune(d.get(), &options, &raw), "tune");
  Handle<tb_trace> trace(raw);

  char* text = nullptr;
  check(tb_trace_to_json(trace.get(), &text), "trace");
  write_atomic(a.trace_out, take(text));

  tb_verdict v;
  check(tb_trace_verdict(trace.get(), &v), "verdict");
  const auto n = tb_trace_size(trace.get());
  std::cout << "candidates evaluated: " << n << "\n";
  if (v.has_best) {
    char* params = nullptr;
    check(tb_trace_best_params_json(trace.get(), &params), "best");
    std::cout << "best candidate: #" << v.best_index << " " << take(params) << "\n";
    std::cout << "best score: " << json(v.best_score).dump() << " (" << percent(v.best_score)
              << ")\n";
  } else {
    std::cout << "best candidate: none (every candidate failed)\n";
  }
  std::cout << "default score: " << json(v.default_score).dump() << " ("
            << percent(v.default_score) << ")\n";
  std::cout << "verdict: " << tb_verdict_text(&v) << (v.tied ? " (tie)" : "") << "\n";
  std::cerr << "wrote " << a.trace_out << "\n";
  return v.has_best ? 0 : kExitFailure;
}

// ---- report ---------------------------------------------------------------

int run_report(const std::string& from, const std::string& format, const std::string& out) {
  const auto text = read_text(from);
  tb_grid* raw = nullptr;
  check(tb_grid_from_json(text.data(), text.size(), &raw), from);
  Handle<tb_grid> grid(raw);
  char* rendered = nullptr;
  check(tb_grid_render(grid.get(), format.c_str(), &rendered), "render");
  const auto s = take(rendered);
  if (out.empty()) {
    std::cout << s;
  } else {
    write_atomic(out, s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark like/dislike classifiers on Spotify audio features"};
  app.set_version_flag("--version", std::string(tb_version()));
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a labeled CSV from two playlists");
  ingest_cmd->add_option("--liked", ingest.liked, "Playlist id of liked tracks")->required();
  ingest_cmd->add_option("--disliked", ingest.disliked, "Playlist id of disliked tracks")
      ->required();
  ingest_cmd->add_option("--fixture", ingest.fixture,
                         "Directory of <playlist>.features.json files (offline mode)");
  ingest_cmd->add_option("--token", ingest.token,
                         "Web API access token (default: $SPOTIFY_TOKEN)");
  ingest_cmd->add_option("--out", ingest.out, "Output CSV path")->required();
  ingest_cmd->add_option("--name", ingest.name, "Dataset name (default: output file stem)");
  ingest_cmd->add_option("--batch-size", ingest.batch_size, "Track ids per feature request")
      ->capture_default_str()
      ->check(CLI::Range(1, 100));
  ingest_cmd->add_option("--max-retries", ingest.max_retries,
                         "Retries on HTTP 429/5xx and connection errors")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  ingest_cmd->add_option("--base-url", ingest.base_url, "API origin (for testing)");

  std::string summarize_data, summarize_name;
  auto* summarize_cmd =
      app.add_subcommand("summarize", "Per-class attribute means of a dataset");
  summarize_cmd->add_option("data,--data", summarize_data, "Dataset CSV ([name=]path)")
      ->required();
  summarize_cmd->add_option("--name", summarize_name, "Dataset name in the table");

  BenchmarkArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Cross-validate algorithms on datasets");
  bench_cmd->add_option("--data", bench.data, "Dataset CSV ([name=]path), repeatable");
  bench_cmd->add_option("--algos", bench.algos, "all or a list of lr,nb,smo,mlp,knn,rf")
      ->default_str("all");
  bench_cmd->add_option("--folds", bench.folds, "Cross-validation folds")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  bench_cmd->add_option("--seed", bench.seed, "Seed for folds and models")
      ->capture_default_str();
  bench_cmd->add_flag("--standardize", bench.standardize,
                      "Z-score features with training-fold statistics");
  bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for report files")
      ->default_str(".");
  bench_cmd->add_option("--formats", bench.formats, "Comma list of md,csv,json")
      ->default_str("md,csv,json");
  bench_cmd->add_option("--config", bench.config, "tunebench.toml-style config file");
  bench_cmd->add_option("--save-models", bench.save_models,
                        "Directory for models fitted on each full dataset");

  TuneArgs tune;
  auto* tune_cmd = app.add_subcommand("tune", "Hyperparameter search for the random forest");
  tune_cmd->add_option("--data", tune.data, "Dataset CSV ([name=]path)")->required();
  tune_cmd->add_option("--n-iter", tune.n_iter, "Candidates to evaluate (default: 32)");
  tune_cmd->add_option("--folds", tune.folds, "Cross-validation folds")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  tune_cmd->add_option("--seed", tune.seed, "Seed for folds, sampling and models")
      ->capture_default_str();
  tune_cmd->add_option("--space", tune.space, "JSON search space replacing the built-in one");
  tune_cmd->add_option("--strategy", tune.strategy, "random or surrogate")
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "surrogate"}));
  tune_cmd->add_option("--trace-out", tune.trace_out, "Trace JSON path")
      ->capture_default_str();
  tune_cmd->add_option("--base-spec", tune.base_spec,
                       "JSON forest spec for parameters outside the space");
  tune_cmd->add_flag("--standardize", tune.standardize,
                     "Z-score features with training-fold statistics");
  tune_cmd->add_flag("--with-timings", tune.with_timings,
                     "Record start times and durations in the trace");

  std::string report_from, report_format = "md", report_out;
  auto* report_cmd = app.add_subcommand("report", "Re-render a saved report.json");
  report_cmd->add_option("--from", report_from, "report.json written by benchmark")
      ->required();
  report_cmd->add_option("--format", report_format, "md, csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"md", "csv", "json"}));
  report_cmd->add_option("--out", report_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*summarize_cmd) return run_summarize(summarize_data, summarize_name);
    if (*bench_cmd) return run_benchmark(bench, *bench_cmd);
    if (*tune_cmd) return run_tune(tune);
    if (*report_cmd) return run_report(report_from, report_format, report_out);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
