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

#include "tuning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "errors.hpp"
#include "models.hpp"
#include "parallel.hpp"

namespace tunebench {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad_param(std::string_view name, std::string_view what) {
  throw Error(ErrorCode::kInvalidArgument,
              "parameter " + std::string(name) + ": " + std::string(what));
}

std::int64_t as_integer(std::string_view name, const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  bad_param(name, "expected an integer");
}

double as_number(std::string_view name, const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  bad_param(name, "expected a number");
}

int as_int(std::string_view name, const ParamValue& v) {
  const auto i = as_integer(name, v);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    bad_param(name, "value out of range");
  }
  return static_cast<int>(i);
}

const std::string& as_string(std::string_view name, const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  bad_param(name, "expected a string");
}

void apply_param(RandomForestSpec& s, std::string_view name, const ParamValue& v) {
  if (name == "n_estimators") {
    s.n_trees = as_int(name, v);
  } else if (name == "criterion") {
    const auto& c = as_string(name, v);
    if (c == "gini") {
      s.criterion = Criterion::kGini;
    } else if (c == "entropy") {
      s.criterion = Criterion::kEntropy;
    } else {
      bad_param(name, "unknown criterion \"" + c + "\"");
    }
  } else if (name == "max_depth") {
    s.max_depth = as_integer(name, v);
  } else if (name == "min_samples_split") {
    s.min_samples_split = as_int(name, v);
  } else if (name == "min_samples_leaf") {
    s.min_samples_leaf = as_int(name, v);
  } else if (name == "min_weight_fraction_leaf") {
    s.min_weight_fraction_leaf = as_number(name, v);
  } else if (name == "max_features") {
    const auto& m = as_string(name, v);
    if (m == "auto" || m == "sqrt") {
      s.max_features = MaxFeatures::kSqrt;
    } else if (m == "log2") {
      s.max_features = MaxFeatures::kLog2;
    } else if (m == "all") {
      s.max_features = MaxFeatures::kAll;
    } else {
      bad_param(name, "unknown mode \"" + m + "\"");
    }
  } else if (name == "max_leaf_nodes") {
    s.max_leaf_nodes = as_int(name, v);
  } else if (name == "min_impurity_decrease") {
    s.min_impurity_decrease = as_number(name, v);
  } else if (name == "bootstrap") {
    const auto* b = std::get_if<bool>(&v);
    if (!b) bad_param(name, "expected a boolean");
    s.bootstrap = *b;
  } else if (name == "ccp_alpha") {
    s.ccp_alpha = as_number(name, v);
  } else {
    bad_param(name, "not a random forest hyperparameter");
  }
}

std::size_t domain_size(const ParamDomain& d) {
  if (const auto* c = std::get_if<CategoricalDomain>(&d)) return c->values.size();
  if (const auto* i = std::get_if<IntegerDomain>(&d)) return i->values.size();
  return 0;
}

ParamValue domain_value(const ParamDomain& d, std::size_t index) {
  if (const auto* c = std::get_if<CategoricalDomain>(&d)) return c->values[index];
  return std::get<IntegerDomain>(d).values[index];
}

// Mixed-radix decoding; the last parameter varies fastest.
Candidate decode_point(const SearchSpace& space, std::uint64_t index) {
  Candidate c(space.params.size());
  for (std::size_t p = space.params.size(); p-- > 0;) {
    const auto size = domain_size(space.params[p].domain);
    c[p] = {space.params[p].name, domain_value(space.params[p].domain, index % size)};
    index /= size;
  }
  return c;
}

// Draws distinct indices from [0, total) by a Fisher-Yates shuffle over a
// virtual array.
std::vector<std::uint64_t> distinct_indices(std::uint64_t total, std::size_t count,
                                            Rng& rng) {
  std::unordered_map<std::uint64_t, std::uint64_t> moved;
  auto at = [&](std::uint64_t i) {
    const auto it = moved.find(i);
    return it == moved.end() ? i : it->second;
  };
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto j = i + rng.uniform_index(total - i);
    const auto vi = at(i);
    const auto vj = at(j);
    moved[j] = vi;
    out.push_back(vj);
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void evaluate_entry(TraceEntry& entry, const RandomForestSpec& base,
                    const SearchObjective& objective, bool timings) {
  const auto start = std::chrono::steady_clock::now();
  if (timings) entry.started_at = utc_now();
  try {
    const auto spec = apply_candidate(base, entry.params);
    entry.fold_accuracies = objective(spec);
    entry.score = mean_of(entry.fold_accuracies);
  } catch (const std::exception& e) {
    entry.score.reset();
    entry.fold_accuracies.clear();
    entry.error = e.what();
  }
  if (timings) {
    entry.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
}

// Surrogate features: set domains by position, log-uniform by log value.
std::vector<double> encode(const SearchSpace& space, const Candidate& c) {
  std::vector<double> x(space.params.size());
  for (std::size_t p = 0; p < space.params.size(); ++p) {
    const auto& d = space.params[p].domain;
    const auto& v = c[p].second;
    if (std::holds_alternative<LogUniformDomain>(d)) {
      x[p] = std::log(as_number(c[p].first, v));
      continue;
    }
    const auto size = domain_size(d);
    for (std::size_t i = 0; i < size; ++i) {
      if (domain_value(d, i) == v) {
        x[p] = static_cast<double>(i);
        break;
      }
    }
  }
  return x;
}

// Small bagged regression forest used to score proposals.
class Surrogate {
 public:
  Surrogate(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
            std::uint64_t seed)
      : x_(x), y_(y) {
    Rng rng(seed);
    const std::size_t n = x.size();
    for (std::size_t t = 0; t < kTrees; ++t) {
      std::vector<std::size_t> rows(n);
      for (auto& r : rows) r = static_cast<std::size_t>(rng.uniform_index(n));
      Tree tree;
      grow(tree, rows, 0, rng);
      trees_.push_back(std::move(tree));
    }
  }

  // Mean and spread of the per-tree predictions.
  std::pair<double, double> predict(const std::vector<double>& x) const {
    std::vector<double> values;
    values.reserve(trees_.size());
    for (const auto& t : trees_) {
      std::size_t node = 0;
      while (t[node].feature >= 0) {
        node = x[static_cast<std::size_t>(t[node].feature)] <= t[node].threshold
                   ? t[node].left
                   : t[node].right;
      }
      values.push_back(t[node].value);
    }
    const double mu = mean_of(values);
    double var = 0.0;
    for (double v : values) var += (v - mu) * (v - mu);
    return {mu, std::sqrt(var / static_cast<double>(values.size()))};
  }

 private:
  static constexpr std::size_t kTrees = 24;
  static constexpr std::size_t kMaxDepth = 8;

  struct Node {
    int feature = -1;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    double value = 0.0;
  };
  using Tree = std::vector<Node>;

  std::size_t grow(Tree& tree, std::vector<std::size_t> rows, std::size_t depth,
                   Rng& rng) {
    const std::size_t id = tree.size();
    tree.emplace_back();
    double sum = 0.0;
    for (auto r : rows) sum += y_[r];
    tree[id].value = sum / static_cast<double>(rows.size());
    if (depth >= kMaxDepth || rows.size() < 2) return id;

    const std::size_t d = x_.front().size();
    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), 0);
    rng.shuffle(std::span<std::size_t>(features));
    features.resize(std::max<std::size_t>(1, (d + 2) / 3));

    double best_sse = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    for (auto f : features) {
      std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        return x_[a][f] != x_[b][f] ? x_[a][f] < x_[b][f] : a < b;
      });
      double left_sum = 0.0, left_sq = 0.0, total_sq = 0.0;
      for (auto r : rows) total_sq += y_[r] * y_[r];
      for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        left_sum += y_[rows[i]];
        left_sq += y_[rows[i]] * y_[rows[i]];
        const double a = x_[rows[i]][f];
        const double b = x_[rows[i + 1]][f];
        if (a == b) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = static_cast<double>(rows.size() - i - 1);
        const double right_sum = sum - left_sum;
        const double sse = (left_sq - left_sum * left_sum / nl) +
                           (total_sq - left_sq - right_sum * right_sum / nr);
        if (sse < best_sse) {
          best_sse = sse;
          best_feature = static_cast<int>(f);
          best_threshold = a + (b - a) / 2.0;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : rows) {
      (x_[r][static_cast<std::size_t>(best_feature)] <= best_threshold ? left_rows
                                                                       : right_rows)
          .push_back(r);
    }
    tree[id].feature = best_feature;
    tree[id].threshold = best_threshold;
    const auto l = grow(tree, std::move(left_rows), depth + 1, rng);
    const auto r = grow(tree, std::move(right_rows), depth + 1, rng);
    tree[id].left = l;
    tree[id].right = r;
    return id;
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<double>& y_;
  std::vector<Tree> trees_;
};

double expected_improvement(double mu, double sigma, double best) {
  if (!(sigma > 1e-12)) return std::max(mu - best, 0.0);
  const double z = (mu - best) / sigma;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  return (mu - best) * cdf + sigma * pdf;
}

constexpr std::size_t kProposals = 64;

ParamValue param_value_from_json(const ojson& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorCode::kParse, "unsupported parameter value " + j.dump());
}

ParamDomain domain_from_json(const std::string& name, const ojson& j) {
  if (j.is_array()) {
    if (j.empty()) bad_param(name, "empty value set");
    const bool all_int = std::all_of(j.begin(), j.end(), [](const ojson& v) {
      return v.is_number_integer();
    });
    if (all_int) {
      IntegerDomain d;
      for (const auto& v : j) d.values.push_back(v.get<std::int64_t>());
      return d;
    }
    CategoricalDomain d;
    for (const auto& v : j) d.values.push_back(param_value_from_json(v));
    return d;
  }
  if (j.is_object() && j.size() == 1 && j.contains("log_uniform")) {
    const auto& b = j.at("log_uniform");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
      bad_param(name, "log_uniform expects [low, high]");
    }
    return LogUniformDomain{b[0].get<double>(), b[1].get<double>()};
  }
  bad_param(name, "domain must be a list of values or {\"log_uniform\": [low, high]}");
}

ojson candidate_to_json(const Candidate& c) {
  ojson j = ojson::object();
  for (const auto& [name, value] : c) j[name] = param_value_to_json(value);
  return j;
}

ojson to_ordered(const nlohmann::json& j) { return ojson::parse(j.dump()); }

}  // namespace

SearchSpace builtin_rf_space() {
  auto strings = [](std::initializer_list<const char*> values) {
    CategoricalDomain d;
    for (const char* v : values) d.values.emplace_back(std::string(v));
    return d;
  };
  SearchSpace s;
  s.params = {
      {"n_estimators", IntegerDomain{{1, 10, 75, 100, 200, 1000}}},
      {"criterion", strings({"gini", "entropy"})},
      {"max_depth", IntegerDomain{{1, 10, 100, 1000, 10000000000}}},
      {"min_samples_split", IntegerDomain{{2, 20, 50, 100}}},
      {"min_samples_leaf", IntegerDomain{{1, 2, 3, 4, 5, 6, 7, 8}}},
      {"min_weight_fraction_leaf", CategoricalDomain{{0.0, 0.25, 0.5}}},
      {"max_features", strings({"auto", "sqrt", "log2"})},
      {"max_leaf_nodes", IntegerDomain{{2, 5, 10, 20, 50, 100}}},
      {"min_impurity_decrease", LogUniformDomain{1e-6, 1e6}},
      {"bootstrap", CategoricalDomain{{true, false}}},
      {"ccp_alpha", LogUniformDomain{1e-6, 1e6}},
  };
  s.n_iter = 32;
  s.k = 10;
  return s;
}

void validate_space(const SearchSpace& space) {
  if (space.n_iter < 1) throw Error(ErrorCode::kInvalidArgument, "n_iter must be >= 1");
  if (space.k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be >= 2");
  const RandomForestSpec base;
  for (std::size_t p = 0; p < space.params.size(); ++p) {
    const auto& [name, domain] = space.params[p];
    for (std::size_t q = 0; q < p; ++q) {
      if (space.params[q].name == name) bad_param(name, "listed twice");
    }
    std::vector<ParamValue> probes;
    if (const auto* lu = std::get_if<LogUniformDomain>(&domain)) {
      if (!(lu->low > 0.0 && lu->low < lu->high && std::isfinite(lu->high))) {
        bad_param(name, "log-uniform bounds need 0 < low < high");
      }
      probes = {lu->low, lu->high};
    } else {
      if (domain_size(domain) == 0) bad_param(name, "empty value set");
      for (std::size_t i = 0; i < domain_size(domain); ++i) {
        probes.push_back(domain_value(domain, i));
      }
    }
    for (const auto& v : probes) {
      auto spec = base;
      apply_param(spec, name, v);
      try {
        validate_spec(spec);
      } catch (const Error& e) {
        bad_param(name, e.what());
      }
    }
  }
}

bool domain_contains(const ParamDomain& domain, const ParamValue& value) {
  if (const auto* lu = std::get_if<LogUniformDomain>(&domain)) {
    const auto* d = std::get_if<double>(&value);
    return d && *d >= lu->low && *d <= lu->high;
  }
  for (std::size_t i = 0; i < domain_size(domain); ++i) {
    if (domain_value(domain, i) == value) return true;
  }
  return false;
}

std::optional<std::uint64_t> finite_size(const SearchSpace& space) {
  std::uint64_t total = 1;
  for (const auto& p : space.params) {
    const auto size = domain_size(p.domain);
    if (size == 0) return std::nullopt;
    if (total > std::numeric_limits<std::uint64_t>::max() / size) return std::nullopt;
    total *= size;
  }
  return total;
}

Candidate sample_candidate(const SearchSpace& space, Rng& rng) {
  Candidate c;
  c.reserve(space.params.size());
  for (const auto& p : space.params) {
    if (const auto* lu = std::get_if<LogUniformDomain>(&p.domain)) {
      const double v = std::exp(rng.uniform(std::log(lu->low), std::log(lu->high)));
      c.emplace_back(p.name, std::clamp(v, lu->low, lu->high));
    } else {
      const auto i = rng.uniform_index(domain_size(p.domain));
      c.emplace_back(p.name, domain_value(p.domain, static_cast<std::size_t>(i)));
    }
  }
  return c;
}

RandomForestSpec apply_candidate(const RandomForestSpec& base, const Candidate& candidate) {
  auto spec = base;
  for (const auto& [name, value] : candidate) apply_param(spec, name, value);
  validate_spec(spec);
  return spec;
}

std::optional<SearchStrategy> parse_strategy(std::string_view name) {
  if (name == "random") return SearchStrategy::kRandom;
  if (name == "surrogate") return SearchStrategy::kSurrogate;
  return std::nullopt;
}

std::string_view strategy_name(SearchStrategy strategy) {
  return strategy == SearchStrategy::kRandom ? "random" : "surrogate";
}

std::optional<std::size_t> best_candidate(const std::vector<TraceEntry>& entries) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].score) continue;
    if (!best || *entries[i].score > *entries[*best].score) best = i;
  }
  return best;
}

SearchTrace search(const SearchSpace& space, const RandomForestSpec& base_spec,
                   std::uint64_t seed, const SearchObjective& objective,
                   const SearchOptions& options) {
  validate_space(space);
  validate_spec(base_spec);

  SearchTrace trace;
  trace.seed = seed;
  trace.strategy = options.strategy;
  trace.space = space;
  trace.base_spec = base_spec;
  try {
    trace.default_fold_accuracies = objective(base_spec);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("default spec: ") + e.what());
  }
  trace.default_score = mean_of(trace.default_fold_accuracies);

  Rng rng(mix_seed(seed, "tune-candidates"));
  const auto total = finite_size(space);
  const std::size_t budget =
      total ? static_cast<std::size_t>(std::min<std::uint64_t>(*total, space.n_iter))
            : space.n_iter;

  auto new_entry = [&](Candidate params) {
    TraceEntry e;
    e.index = trace.candidates.size();
    e.params = std::move(params);
    trace.candidates.push_back(std::move(e));
  };

  if (options.strategy == SearchStrategy::kRandom) {
    if (total) {
      for (auto index : distinct_indices(*total, budget, rng)) {
        new_entry(decode_point(space, index));
      }
    } else {
      for (std::size_t i = 0; i < budget; ++i) new_entry(sample_candidate(space, rng));
    }
    parallel_for(trace.candidates.size(), [&](std::size_t i) {
      evaluate_entry(trace.candidates[i], base_spec, objective, options.record_timings);
    });
  } else {
    const std::size_t warmup = (space.n_iter + 3) / 4;
    auto seen = [&](const Candidate& c) {
      return std::any_of(trace.candidates.begin(), trace.candidates.end(),
                         [&](const TraceEntry& e) { return e.params == c; });
    };
    while (trace.candidates.size() < budget) {
      const std::size_t i = trace.candidates.size();
      std::vector<std::vector<double>> x;
      std::vector<double> y;
      for (const auto& e : trace.candidates) {
        if (!e.score) continue;
        x.push_back(encode(space, e.params));
        y.push_back(*e.score);
      }
      std::vector<Candidate> proposals;
      const std::size_t draws = (i < warmup || x.empty()) ? 1 : kProposals;
      // On a finite space already-tried points are redrawn; an unseen point
      // exists because budget <= total.
      while (proposals.size() < draws) {
        auto c = sample_candidate(space, rng);
        if (total && seen(c)) continue;
        proposals.push_back(std::move(c));
      }
      std::size_t pick = 0;
      if (proposals.size() > 1) {
        const Surrogate model(x, y, mix_seed(seed, static_cast<std::uint64_t>(i)));
        const double incumbent = *std::max_element(y.begin(), y.end());
        double best_ei = -1.0;
        for (std::size_t p = 0; p < proposals.size(); ++p) {
          const auto [mu, sigma] = model.predict(encode(space, proposals[p]));
          const double ei = expected_improvement(mu, sigma, incumbent);
          if (ei > best_ei) {
            best_ei = ei;
            pick = p;
          }
        }
      }
      new_entry(std::move(proposals[pick]));
      evaluate_entry(trace.candidates.back(), base_spec, objective, options.record_timings);
    }
  }
  trace.best = best_candidate(trace.candidates);
  return trace;
}

SearchTrace search(const SearchSpace& space, const Dataset& dataset,
                   const RandomForestSpec& base_spec, std::uint64_t seed,
                   const SearchOptions& options) {
  const auto data = to_labeled_data(dataset);
  const auto plan = stratified_folds(data.labels, space.k, seed);
  const CvOptions cv{options.standardize};
  auto trace = search(
      space, base_spec, seed,
      [&](const RandomForestSpec& spec) {
        return cross_validate(ClassifierSpec{spec}, dataset, plan, cv).fold_accuracies;
      },
      options);
  trace.dataset_name = dataset.name;
  trace.plan = plan;
  return trace;
}

Verdict verdict(const SearchTrace& trace) {
  Verdict v;
  v.default_score = trace.default_score;
  if (trace.best) v.tuned_score = trace.candidates[*trace.best].score;
  v.tied = v.tuned_score && *v.tuned_score == v.default_score;
  v.kind = v.tuned_score && *v.tuned_score > v.default_score ? VerdictKind::kTunedWins
                                                             : VerdictKind::kDefaultWins;
  return v;
}

std::string_view verdict_text(VerdictKind kind) {
  return kind == VerdictKind::kTunedWins ? "tuned wins" : "default wins";
}

ojson param_value_to_json(const ParamValue& value) {
  return std::visit([](const auto& v) { return ojson(v); }, value);
}

ojson domain_to_json(const ParamDomain& domain) {
  if (const auto* lu = std::get_if<LogUniformDomain>(&domain)) {
    return ojson{{"log_uniform", {lu->low, lu->high}}};
  }
  ojson values = ojson::array();
  for (std::size_t i = 0; i < domain_size(domain); ++i) {
    values.push_back(param_value_to_json(domain_value(domain, i)));
  }
  return values;
}

std::string space_to_json(const SearchSpace& space) {
  ojson j = ojson::object();
  for (const auto& p : space.params) j[p.name] = domain_to_json(p.domain);
  return j.dump(2) + "\n";
}

SearchSpace space_from_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kParse, std::string("search space JSON: ") + e.what());
  }
  if (!j.is_object() || j.empty()) {
    throw Error(ErrorCode::kParse, "search space must be a non-empty JSON object");
  }
  SearchSpace space;
  for (const auto& [name, domain] : j.items()) {
    space.params.push_back({name, domain_from_json(name, domain)});
  }
  validate_space(space);
  return space;
}

std::string trace_to_json(const SearchTrace& trace) {
  ojson j;
  j["schema"] = kTraceSchema;
  j["dataset"] = trace.dataset_name;
  j["seed"] = trace.seed;
  j["strategy"] = strategy_name(trace.strategy);
  j["n_iter"] = trace.space.n_iter;
  j["k"] = trace.space.k;
  ojson space = ojson::array();
  for (const auto& p : trace.space.params) {
    space.push_back({{"name", p.name}, {"domain", domain_to_json(p.domain)}});
  }
  j["space"] = std::move(space);
  j["base_spec"] = to_ordered(spec_to_json(ClassifierSpec{trace.base_spec}));
  j["fold_seed"] = trace.plan.seed;
  j["fold_assignment"] = trace.plan.assignment;
  j["default"] = {{"score", trace.default_score},
                  {"fold_accuracies", trace.default_fold_accuracies}};
  ojson candidates = ojson::array();
  for (const auto& e : trace.candidates) {
    ojson c;
    c["index"] = e.index;
    c["params"] = candidate_to_json(e.params);
    c["score"] = e.score ? ojson(*e.score) : ojson(nullptr);
    c["fold_accuracies"] = e.fold_accuracies;
    c["error"] = e.score ? ojson(nullptr) : ojson(e.error);
    if (e.started_at) c["started_at"] = *e.started_at;
    if (e.seconds) c["seconds"] = *e.seconds;
    candidates.push_back(std::move(c));
  }
  j["candidates"] = std::move(candidates);
  if (trace.best) {
    const auto& b = trace.candidates[*trace.best];
    j["best"] = {{"index", b.index}, {"score", *b.score}, {"params", candidate_to_json(b.params)}};
  } else {
    j["best"] = nullptr;
  }
  const auto v = verdict(trace);
  j["verdict"] = {{"result", verdict_text(v.kind)},
                  {"tuned_score", v.tuned_score ? ojson(*v.tuned_score) : ojson(nullptr)},
                  {"default_score", v.default_score},
                  {"tied", v.tied}};
  return j.dump(2) + "\n";
}

SearchTrace trace_from_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kParse, std::string("trace JSON: ") + e.what());
  }
  try {
    if (j.at("schema") != kTraceSchema) {
      throw Error(ErrorCode::kParse, "unsupported trace schema " + j.at("schema").dump());
    }
    SearchTrace t;
    t.dataset_name = j.at("dataset").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    const auto strategy = parse_strategy(j.at("strategy").get<std::string>());
    if (!strategy) throw Error(ErrorCode::kParse, "unknown strategy in trace");
    t.strategy = *strategy;
    t.space.n_iter = j.at("n_iter").get<std::size_t>();
    t.space.k = j.at("k").get<std::size_t>();
    for (const auto& p : j.at("space")) {
      const auto name = p.at("name").get<std::string>();
      t.space.params.push_back({name, domain_from_json(name, p.at("domain"))});
    }
    const auto base = spec_from_json(nlohmann::json::parse(j.at("base_spec").dump()));
    t.base_spec = std::get<RandomForestSpec>(base);
    t.plan.k = t.space.k;
    t.plan.seed = j.at("fold_seed").get<std::uint64_t>();
    t.plan.assignment = j.at("fold_assignment").get<std::vector<std::size_t>>();
    t.default_score = j.at("default").at("score").get<double>();
    t.default_fold_accuracies =
        j.at("default").at("fold_accuracies").get<std::vector<double>>();
    for (const auto& c : j.at("candidates")) {
      TraceEntry e;
      e.index = c.at("index").get<std::size_t>();
      for (const auto& [name, value] : c.at("params").items()) {
        e.params.emplace_back(name, param_value_from_json(value));
      }
      if (!c.at("score").is_null()) e.score = c.at("score").get<double>();
      e.fold_accuracies = c.at("fold_accuracies").get<std::vector<double>>();
      if (!c.at("error").is_null()) e.error = c.at("error").get<std::string>();
      if (c.contains("started_at")) e.started_at = c.at("started_at").get<std::string>();
      if (c.contains("seconds")) e.seconds = c.at("seconds").get<double>();
      t.candidates.push_back(std::move(e));
    }
    t.best = best_candidate(t.candidates);
    return t;
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed trace JSON: ") + e.what());
  } catch (const std::bad_variant_access&) {
    throw Error(ErrorCode::kParse, "trace base_spec is not a random forest spec");
  }
}

}  // namespace tunebench
