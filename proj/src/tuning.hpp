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

#ifndef TUNEBENCH_SRC_TUNING_HPP_
#define TUNEBENCH_SRC_TUNING_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "evaluation.hpp"
#include "forest.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace tunebench {

using ParamValue = std::variant<std::int64_t, double, bool, std::string>;

struct CategoricalDomain {
  std::vector<ParamValue> values;
};

struct IntegerDomain {
  std::vector<std::int64_t> values;
};

// Sampled as exp(uniform(ln low, ln high)).
struct LogUniformDomain {
  double low = 0.0;
  double high = 0.0;
};

using ParamDomain = std::variant<CategoricalDomain, IntegerDomain, LogUniformDomain>;

struct SearchParam {
  std::string name;
  ParamDomain domain;
};

// Parameter names use the scikit-learn spelling (n_estimators, not n_trees).
struct SearchSpace {
  std::vector<SearchParam> params;
  std::size_t n_iter = 32;
  std::size_t k = 10;
};

// Sampled values in the order of the space's parameters.
using Candidate = std::vector<std::pair<std::string, ParamValue>>;

SearchSpace builtin_rf_space();

// Throws kInvalidArgument for unknown or duplicate names, empty sets,
// bad log-uniform bounds, or values the forest spec cannot take.
void validate_space(const SearchSpace& space);

bool domain_contains(const ParamDomain& domain, const ParamValue& value);

// Number of points in the space, or nullopt if any domain is continuous or
// the product overflows.
std::optional<std::uint64_t> finite_size(const SearchSpace& space);

// One independent draw per parameter.
Candidate sample_candidate(const SearchSpace& space, Rng& rng);

// Overrides the named fields of `base`. Throws kInvalidArgument on an unknown
// name or a value of the wrong type or range.
RandomForestSpec apply_candidate(const RandomForestSpec& base,
                                 const Candidate& candidate);

enum class SearchStrategy { kRandom, kSurrogate };

std::optional<SearchStrategy> parse_strategy(std::string_view name);
std::string_view strategy_name(SearchStrategy strategy);

struct TraceEntry {
  std::size_t index = 0;
  Candidate params;
  std::optional<double> score;
  std::vector<double> fold_accuracies;
  std::string error;
  // Only filled when timings are requested.
  std::optional<std::string> started_at;
  std::optional<double> seconds;
};

struct SearchTrace {
  std::string dataset_name;
  std::uint64_t seed = 0;
  SearchStrategy strategy = SearchStrategy::kRandom;
  SearchSpace space;
  RandomForestSpec base_spec;
  FoldPlan plan;
  std::vector<TraceEntry> candidates;
  double default_score = 0.0;
  std::vector<double> default_fold_accuracies;
  // Highest score; the earliest candidate wins ties. Empty if all failed.
  std::optional<std::size_t> best;
};

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::kRandom;
  bool standardize = false;
  bool record_timings = false;
};

// Per-fold accuracies of one forest spec.
using SearchObjective = std::function<std::vector<double>(const RandomForestSpec&)>;

// Core loop with an arbitrary objective. A finite space under the random
// strategy is sampled without replacement, so the trace stops early once
// every point has been tried. A throwing candidate is recorded and skipped.
// Throws if the base spec itself fails.
SearchTrace search(const SearchSpace& space, const RandomForestSpec& base_spec,
                   std::uint64_t seed, const SearchObjective& objective,
                   const SearchOptions& options = {});

// Cross-validated search on one dataset; every candidate and the base spec
// use one fold plan drawn from `seed`.
SearchTrace search(const SearchSpace& space, const Dataset& dataset,
                   const RandomForestSpec& base_spec, std::uint64_t seed,
                   const SearchOptions& options = {});

std::optional<std::size_t> best_candidate(const std::vector<TraceEntry>& entries);

enum class VerdictKind { kTunedWins, kDefaultWins };

struct Verdict {
  VerdictKind kind = VerdictKind::kDefaultWins;
  std::optional<double> tuned_score;
  double default_score = 0.0;
  // Equal scores go to the default.
  bool tied = false;
};

Verdict verdict(const SearchTrace& trace);
std::string_view verdict_text(VerdictKind kind);

inline constexpr std::string_view kTraceSchema = "tunebench.trace/1";

nlohmann::ordered_json param_value_to_json(const ParamValue& value);
nlohmann::ordered_json domain_to_json(const ParamDomain& domain);

std::string trace_to_json(const SearchTrace& trace);
// Best is recomputed from the candidate scores, not read back.
SearchTrace trace_from_json(std::string_view text);

// A JSON object mapping parameter names to domains. A domain is a list of
// values or {"log_uniform": [low, high]}. Key order is kept.
SearchSpace space_from_json(std::string_view text);
std::string space_to_json(const SearchSpace& space);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_TUNING_HPP_
