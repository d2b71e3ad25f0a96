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

#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "errors.hpp"

namespace tunebench {
namespace {

using nlohmann::json;

template <class>
inline constexpr bool kAlwaysFalse = false;

[[noreturn]] void bad_spec(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

std::string_view penalty_name(Penalty p) { return p == Penalty::kL2 ? "l2" : "l1"; }

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kIdentity: return "identity";
    case Activation::kLogistic: return "logistic";
    case Activation::kTanh: return "tanh";
    case Activation::kRelu: return "relu";
  }
  return "relu";
}

std::string_view solver_name(MlpSolver s) {
  switch (s) {
    case MlpSolver::kLbfgs: return "lbfgs";
    case MlpSolver::kSgd: return "sgd";
    case MlpSolver::kAdam: return "adam";
  }
  return "adam";
}

std::string_view criterion_name(Criterion c) {
  return c == Criterion::kGini ? "gini" : "entropy";
}

std::string_view max_features_name(MaxFeatures m) {
  switch (m) {
    case MaxFeatures::kSqrt: return "sqrt";
    case MaxFeatures::kLog2: return "log2";
    case MaxFeatures::kAll: return "all";
  }
  return "sqrt";
}

template <typename Enum, std::size_t N>
Enum parse_enum(const json& j, std::string_view field,
                const std::pair<std::string_view, Enum> (&table)[N]) {
  if (!j.is_string()) bad_spec(std::string(field) + " must be a string");
  const auto value = j.get<std::string>();
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  bad_spec("unknown " + std::string(field) + " \"" + value + "\"");
}

// Reads fields from a spec object, tracking which keys were consumed.
class FieldReader {
 public:
  explicit FieldReader(const json& j) : j_(j) {
    if (!j.is_object()) bad_spec("classifier spec must be a JSON object");
    used_.insert("algorithm");
  }

  template <typename T>
  void read(std::string_view key, T& out) {
    const std::string k(key);
    used_.insert(k);
    if (!j_.contains(k)) return;
    try {
      out = j_.at(k).get<T>();
    } catch (const json::exception&) {
      bad_spec("field \"" + k + "\" has the wrong type");
    }
  }

  template <typename T>
  void read_optional(std::string_view key, std::optional<T>& out) {
    const std::string k(key);
    used_.insert(k);
    if (!j_.contains(k)) return;
    if (j_.at(k).is_null()) {
      out.reset();
      return;
    }
    T value{};
    read(key, value);
    out = value;
  }

  const json* raw(std::string_view key) {
    const std::string k(key);
    used_.insert(k);
    return j_.contains(k) ? &j_.at(k) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) bad_spec("unknown classifier field \"" + key + "\"");
    }
  }

 private:
  const json& j_;
  std::set<std::string> used_;
};

constexpr std::pair<std::string_view, Penalty> kPenalties[] = {
    {"l2", Penalty::kL2}, {"l1", Penalty::kL1}};
constexpr std::pair<std::string_view, Activation> kActivations[] = {
    {"identity", Activation::kIdentity},
    {"logistic", Activation::kLogistic},
    {"tanh", Activation::kTanh},
    {"relu", Activation::kRelu}};
constexpr std::pair<std::string_view, MlpSolver> kSolvers[] = {
    {"lbfgs", MlpSolver::kLbfgs}, {"sgd", MlpSolver::kSgd}, {"adam", MlpSolver::kAdam}};
constexpr std::pair<std::string_view, KnnWeights> kWeights[] = {
    {"uniform", KnnWeights::kUniform}, {"distance", KnnWeights::kDistance}};
constexpr std::pair<std::string_view, Criterion> kCriteria[] = {
    {"gini", Criterion::kGini}, {"entropy", Criterion::kEntropy}};
constexpr std::pair<std::string_view, MaxFeatures> kMaxFeatures[] = {
    {"sqrt", MaxFeatures::kSqrt},
    {"auto", MaxFeatures::kSqrt},
    {"log2", MaxFeatures::kLog2},
    {"all", MaxFeatures::kAll}};

json layers_to_json(const std::vector<DenseLayer>& layers) {
  json out = json::array();
  for (const auto& l : layers) {
    out.push_back({{"inputs", l.inputs},
                   {"outputs", l.outputs},
                   {"weights", l.weights},
                   {"biases", l.biases}});
  }
  return out;
}

std::vector<DenseLayer> layers_from_json(const json& j) {
  std::vector<DenseLayer> layers;
  for (const auto& l : j) {
    DenseLayer layer;
    layer.inputs = l.at("inputs").get<std::size_t>();
    layer.outputs = l.at("outputs").get<std::size_t>();
    layer.weights = l.at("weights").get<std::vector<double>>();
    layer.biases = l.at("biases").get<std::vector<double>>();
    layers.push_back(std::move(layer));
  }
  return layers;
}

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.label, n.counts[0],
                     n.counts[1], n.impurity});
  }
  return nodes;
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree tree;
  for (const auto& n : j) {
    TreeNode node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.label = n.at(4).get<int>();
    node.counts = {n.at(5).get<double>(), n.at(6).get<double>()};
    node.impurity = n.at(7).get<double>();
    tree.nodes.push_back(node);
  }
  return tree;
}

}  // namespace

std::string_view algorithm_tag(Algorithm a) {
  switch (a) {
    case Algorithm::kLogisticRegression: return "lr";
    case Algorithm::kNaiveBayes: return "nb";
    case Algorithm::kLinearSvm: return "smo";
    case Algorithm::kMlp: return "mlp";
    case Algorithm::kKnn: return "knn";
    case Algorithm::kRandomForest: return "rf";
  }
  return "?";
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kLogisticRegression: return "Logistic Regression";
    case Algorithm::kNaiveBayes: return "Naive Bayes";
    case Algorithm::kLinearSvm: return "Sequential Minimal Optimization";
    case Algorithm::kMlp: return "Neural Network";
    case Algorithm::kKnn: return "Nearest Neighbor";
    case Algorithm::kRandomForest: return "Random Forest";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm_tag(std::string_view tag) {
  for (auto a : kAllAlgorithms) {
    if (algorithm_tag(a) == tag) return a;
  }
  return std::nullopt;
}

Algorithm algorithm_of(const ClassifierSpec& spec) {
  return static_cast<Algorithm>(spec.index());
}

ClassifierSpec default_spec(Algorithm a) {
  switch (a) {
    case Algorithm::kLogisticRegression: return LogisticRegressionSpec{};
    case Algorithm::kNaiveBayes: return NaiveBayesSpec{};
    case Algorithm::kLinearSvm: return LinearSvmSpec{};
    case Algorithm::kMlp: return MlpSpec{};
    case Algorithm::kKnn: return KnnSpec{};
    case Algorithm::kRandomForest: return RandomForestSpec{};
  }
  return RandomForestSpec{};
}

void validate_spec(const ClassifierSpec& spec) {
  auto positive = [](double v, std::string_view name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      bad_spec(std::string(name) + " must be a positive finite number");
    }
  };
  auto nonnegative = [](double v, std::string_view name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      bad_spec(std::string(name) + " must be a nonnegative finite number");
    }
  };
  auto at_least = [](long long v, long long low, std::string_view name) {
    if (v < low) bad_spec(std::string(name) + " must be >= " + std::to_string(low));
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogisticRegressionSpec>) {
          positive(s.cost, "cost");
          at_least(s.max_iterations, 1, "max_iterations");
          positive(s.tolerance, "tolerance");
        } else if constexpr (std::is_same_v<T, NaiveBayesSpec>) {
          nonnegative(s.variance_smoothing, "variance_smoothing");
        } else if constexpr (std::is_same_v<T, LinearSvmSpec>) {
          positive(s.cost, "cost");
          positive(s.kkt_tolerance, "kkt_tolerance");
          at_least(s.max_passes, 1, "max_passes");
        } else if constexpr (std::is_same_v<T, MlpSpec>) {
          for (int w : s.hidden_layers) at_least(w, 1, "hidden_layers entries");
          nonnegative(s.alpha, "alpha");
          at_least(s.max_epochs, 1, "max_epochs");
          positive(s.learning_rate, "learning_rate");
        } else if constexpr (std::is_same_v<T, KnnSpec>) {
          at_least(s.k, 1, "k");
        } else if constexpr (std::is_same_v<T, RandomForestSpec>) {
          at_least(s.n_trees, 1, "n_trees");
          if (s.max_depth) at_least(*s.max_depth, 1, "max_depth");
          at_least(s.min_samples_split, 2, "min_samples_split");
          at_least(s.min_samples_leaf, 1, "min_samples_leaf");
          if (!(s.min_weight_fraction_leaf >= 0.0 && s.min_weight_fraction_leaf <= 0.5)) {
            bad_spec("min_weight_fraction_leaf must be in [0, 0.5]");
          }
          if (s.max_leaf_nodes) at_least(*s.max_leaf_nodes, 2, "max_leaf_nodes");
          nonnegative(s.min_impurity_decrease, "min_impurity_decrease");
          nonnegative(s.ccp_alpha, "ccp_alpha");
        } else {
          static_assert(kAlwaysFalse<T>);
        }
      },
      spec);
}

nlohmann::json spec_to_json(const ClassifierSpec& spec) {
  json j;
  j["algorithm"] = algorithm_tag(algorithm_of(spec));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogisticRegressionSpec>) {
          j["penalty"] = penalty_name(s.penalty);
          j["cost"] = s.cost;
          j["max_iterations"] = s.max_iterations;
          j["tolerance"] = s.tolerance;
        } else if constexpr (std::is_same_v<T, NaiveBayesSpec>) {
          j["variance_smoothing"] = s.variance_smoothing;
        } else if constexpr (std::is_same_v<T, LinearSvmSpec>) {
          j["cost"] = s.cost;
          j["kkt_tolerance"] = s.kkt_tolerance;
          j["max_passes"] = s.max_passes;
        } else if constexpr (std::is_same_v<T, MlpSpec>) {
          j["hidden_layers"] = s.hidden_layers;
          j["activation"] = activation_name(s.activation);
          j["solver"] = solver_name(s.solver);
          j["alpha"] = s.alpha;
          j["max_epochs"] = s.max_epochs;
          j["learning_rate"] = s.learning_rate;
        } else if constexpr (std::is_same_v<T, KnnSpec>) {
          j["k"] = s.k;
          j["weights"] = s.weights == KnnWeights::kUniform ? "uniform" : "distance";
        } else if constexpr (std::is_same_v<T, RandomForestSpec>) {
          j["n_trees"] = s.n_trees;
          j["criterion"] = criterion_name(s.criterion);
          j["max_depth"] = s.max_depth ? json(*s.max_depth) : json(nullptr);
          j["max_features"] = max_features_name(s.max_features);
          j["min_samples_split"] = s.min_samples_split;
          j["min_samples_leaf"] = s.min_samples_leaf;
          j["min_weight_fraction_leaf"] = s.min_weight_fraction_leaf;
          j["max_leaf_nodes"] = s.max_leaf_nodes ? json(*s.max_leaf_nodes) : json(nullptr);
          j["min_impurity_decrease"] = s.min_impurity_decrease;
          j["bootstrap"] = s.bootstrap;
          j["ccp_alpha"] = s.ccp_alpha;
        }
      },
      spec);
  return j;
}

ClassifierSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("algorithm") || !j.at("algorithm").is_string()) {
    bad_spec("classifier spec needs an \"algorithm\" tag");
  }
  const auto tag = j.at("algorithm").get<std::string>();
  const auto algorithm = parse_algorithm_tag(tag);
  if (!algorithm) bad_spec("unknown algorithm \"" + tag + "\"");
  ClassifierSpec spec = default_spec(*algorithm);
  FieldReader r(j);
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogisticRegressionSpec>) {
          if (auto* p = r.raw("penalty")) s.penalty = parse_enum(*p, "penalty", kPenalties);
          r.read("cost", s.cost);
          r.read("max_iterations", s.max_iterations);
          r.read("tolerance", s.tolerance);
        } else if constexpr (std::is_same_v<T, NaiveBayesSpec>) {
          r.read("variance_smoothing", s.variance_smoothing);
        } else if constexpr (std::is_same_v<T, LinearSvmSpec>) {
          r.read("cost", s.cost);
          r.read("kkt_tolerance", s.kkt_tolerance);
          r.read("max_passes", s.max_passes);
        } else if constexpr (std::is_same_v<T, MlpSpec>) {
          r.read("hidden_layers", s.hidden_layers);
          if (auto* p = r.raw("activation")) {
            s.activation = parse_enum(*p, "activation", kActivations);
          }
          if (auto* p = r.raw("solver")) s.solver = parse_enum(*p, "solver", kSolvers);
          r.read("alpha", s.alpha);
          r.read("max_epochs", s.max_epochs);
          r.read("learning_rate", s.learning_rate);
        } else if constexpr (std::is_same_v<T, KnnSpec>) {
          r.read("k", s.k);
          if (auto* p = r.raw("weights")) s.weights = parse_enum(*p, "weights", kWeights);
        } else if constexpr (std::is_same_v<T, RandomForestSpec>) {
          r.read("n_trees", s.n_trees);
          if (auto* p = r.raw("criterion")) {
            s.criterion = parse_enum(*p, "criterion", kCriteria);
          }
          r.read_optional("max_depth", s.max_depth);
          if (auto* p = r.raw("max_features")) {
            s.max_features = parse_enum(*p, "max_features", kMaxFeatures);
          }
          r.read("min_samples_split", s.min_samples_split);
          r.read("min_samples_leaf", s.min_samples_leaf);
          r.read("min_weight_fraction_leaf", s.min_weight_fraction_leaf);
          r.read_optional("max_leaf_nodes", s.max_leaf_nodes);
          r.read("min_impurity_decrease", s.min_impurity_decrease);
          r.read("bootstrap", s.bootstrap);
          r.read("ccp_alpha", s.ccp_alpha);
        }
      },
      spec);
  r.finish();
  validate_spec(spec);
  return spec;
}

Standardizer Standardizer::fit(const LabeledData& data) {
  Standardizer s;
  const std::size_t d = data.n_features;
  const double n = static_cast<double>(data.rows());
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += data.row(i)[j];
  }
  for (auto& m : s.mean) m /= n;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = data.row(i)[j] - s.mean[j];
      s.scale[j] += diff * diff;
    }
  }
  for (auto& v : s.scale) {
    v = std::sqrt(v / n);
    if (!(v > 0.0)) v = 1.0;
  }
  return s;
}

void Standardizer::apply(std::span<const double> in, std::span<double> out) const {
  for (std::size_t j = 0; j < in.size(); ++j) out[j] = (in[j] - mean[j]) / scale[j];
}

LabeledData Standardizer::apply(const LabeledData& data) const {
  LabeledData out = data;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    apply(data.row(i), std::span<double>(out.values.data() + i * data.n_features,
                                         data.n_features));
  }
  return out;
}

TrainedModel fit(const ClassifierSpec& spec, const LabeledData& raw_train,
                 std::uint64_t seed, const FitOptions& options) {
  validate_spec(spec);
  require_both_classes(raw_train);
  TrainedModel model;
  model.spec = spec;
  model.seed = seed;
  LabeledData scaled;
  if (options.standardize) {
    model.scaler = Standardizer::fit(raw_train);
    scaled = model.scaler->apply(raw_train);
  }
  const LabeledData& train = options.standardize ? scaled : raw_train;

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogisticRegressionSpec>) {
          auto result = fit_logistic(s, train);
          if (!result.converged) {
            model.warnings.push_back("logistic regression did not converge in " +
                                     std::to_string(result.iterations) + " iterations");
          }
          model.state = std::move(result.model);
        } else if constexpr (std::is_same_v<T, NaiveBayesSpec>) {
          model.state = fit_naive_bayes(s, train);
        } else if constexpr (std::is_same_v<T, LinearSvmSpec>) {
          auto result = smo_solve(train, s.cost, s.kkt_tolerance, s.max_passes, seed);
          if (!result.converged) {
            model.warnings.push_back("SMO stopped after " +
                                     std::to_string(result.iterations) +
                                     " pair updates without meeting the KKT tolerance");
          }
          model.state = SvmState{std::move(result)};
        } else if constexpr (std::is_same_v<T, MlpSpec>) {
          auto result = fit_mlp(s, train, seed);
          if (!result.converged) {
            model.warnings.push_back("MLP did not converge in " +
                                     std::to_string(result.epochs) + " epochs");
          }
          model.state = MlpState{std::move(result.layers)};
        } else if constexpr (std::is_same_v<T, KnnSpec>) {
          if (static_cast<std::size_t>(s.k) > train.rows()) {
            throw Error(ErrorCode::kTraining,
                        "k = " + std::to_string(s.k) + " exceeds the training size " +
                            std::to_string(train.rows()));
          }
          model.state = KnnState{train};
        } else if constexpr (std::is_same_v<T, RandomForestSpec>) {
          model.state = ForestState{fit_forest(s, train, seed)};
        }
      },
      spec);
  return model;
}

TrainedModel fit(const ClassifierSpec& spec, const Dataset& train,
                 std::uint64_t seed, const FitOptions& options) {
  return fit(spec, to_labeled_data(train), seed, options);
}

PredictionOutput predict(const TrainedModel& model, std::span<const double> raw_x) {
  std::vector<double> scaled;
  std::span<const double> x = raw_x;
  if (model.scaler) {
    scaled.resize(raw_x.size());
    model.scaler->apply(raw_x, scaled);
    x = scaled;
  }
  return std::visit(
      [&](const auto& state) -> PredictionOutput {
        using T = std::decay_t<decltype(state)>;
        PredictionOutput out;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          out.score = logistic_probability(state, x);
          out.label = out.score >= 0.5 ? 1 : 0;
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          const auto lp = nb_class_log_posterior(state, x);
          out.label = lp[1] >= lp[0] ? 1 : 0;
          out.score = sigmoid(lp[1] - lp[0]);
        } else if constexpr (std::is_same_v<T, SvmState>) {
          out.score = svm_margin(state.solution.weights, state.solution.bias, x);
          out.label = out.score >= 0.0 ? 1 : 0;
        } else if constexpr (std::is_same_v<T, MlpState>) {
          const auto& spec = std::get<MlpSpec>(model.spec);
          out.score = mlp_probability(state.layers, spec.activation, x);
          out.label = out.score >= 0.5 ? 1 : 0;
        } else if constexpr (std::is_same_v<T, KnnState>) {
          const auto& spec = std::get<KnnSpec>(model.spec);
          const auto neighbors =
              knn_nearest(state.train, x, static_cast<std::size_t>(spec.k));
          out = knn_vote(state.train, neighbors, spec.weights);
        } else if constexpr (std::is_same_v<T, ForestState>) {
          out = forest_vote(state.trees, x);
        }
        return out;
      },
      model.state);
}

PredictionOutput predict(const TrainedModel& model, const AudioFeatures& f) {
  const auto v = f.to_array();
  return predict(model, std::span<const double>(v));
}

std::string model_to_json(const TrainedModel& model) {
  json j;
  j["format"] = "tunebench.model";
  j["version"] = kModelFormatVersion;
  j["algorithm"] = algorithm_tag(model.algorithm());
  j["spec"] = spec_to_json(model.spec);
  j["seed"] = model.seed;
  j["warnings"] = model.warnings;
  if (model.scaler) {
    j["scaler"] = {{"mean", model.scaler->mean}, {"scale", model.scaler->scale}};
  } else {
    j["scaler"] = nullptr;
  }
  json state;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          state = {{"weights", s.weights}, {"bias", s.bias}};
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          state = {{"means", {s.means[0], s.means[1]}},
                   {"variances", {s.variances[0], s.variances[1]}},
                   {"priors", {s.priors[0], s.priors[1]}},
                   {"epsilon", s.epsilon}};
        } else if constexpr (std::is_same_v<T, SvmState>) {
          state = {{"alpha", s.solution.alpha},
                   {"bias", s.solution.bias},
                   {"weights", s.solution.weights},
                   {"iterations", s.solution.iterations},
                   {"converged", s.solution.converged}};
        } else if constexpr (std::is_same_v<T, MlpState>) {
          state = {{"layers", layers_to_json(s.layers)}};
        } else if constexpr (std::is_same_v<T, KnnState>) {
          state = {{"n_features", s.train.n_features},
                   {"values", s.train.values},
                   {"labels", s.train.labels}};
        } else if constexpr (std::is_same_v<T, ForestState>) {
          json trees = json::array();
          for (const auto& t : s.trees) trees.push_back(tree_to_json(t));
          state = {{"trees", trees}};
        }
      },
      model.state);
  j["state"] = std::move(state);
  return j.dump();
}

TrainedModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("model JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "tunebench.model") {
      throw Error(ErrorCode::kParse, "not a tunebench model document");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::kParse, "unsupported model format version " +
                                         j.at("version").dump());
    }
    TrainedModel model;
    model.spec = spec_from_json(j.at("spec"));
    model.seed = j.at("seed").get<std::uint64_t>();
    model.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (!j.at("scaler").is_null()) {
      model.scaler = Standardizer{j["scaler"].at("mean").get<std::vector<double>>(),
                                  j["scaler"].at("scale").get<std::vector<double>>()};
    }
    const auto& s = j.at("state");
    switch (model.algorithm()) {
      case Algorithm::kLogisticRegression:
        model.state = LogisticModel{s.at("weights").get<std::vector<double>>(),
                                    s.at("bias").get<double>()};
        break;
      case Algorithm::kNaiveBayes: {
        NaiveBayesModel nb;
        for (std::size_t c = 0; c < 2; ++c) {
          nb.means[c] = s.at("means").at(c).get<std::vector<double>>();
          nb.variances[c] = s.at("variances").at(c).get<std::vector<double>>();
          nb.priors[c] = s.at("priors").at(c).get<double>();
        }
        nb.epsilon = s.at("epsilon").get<double>();
        model.state = std::move(nb);
        break;
      }
      case Algorithm::kLinearSvm: {
        SmoResult r;
        r.alpha = s.at("alpha").get<std::vector<double>>();
        r.bias = s.at("bias").get<double>();
        r.weights = s.at("weights").get<std::vector<double>>();
        r.iterations = s.at("iterations").get<long>();
        r.converged = s.at("converged").get<bool>();
        model.state = SvmState{std::move(r)};
        break;
      }
      case Algorithm::kMlp:
        model.state = MlpState{layers_from_json(s.at("layers"))};
        break;
      case Algorithm::kKnn: {
        LabeledData train;
        train.n_features = s.at("n_features").get<std::size_t>();
        train.values = s.at("values").get<std::vector<double>>();
        train.labels = s.at("labels").get<std::vector<int>>();
        model.state = KnnState{std::move(train)};
        break;
      }
      case Algorithm::kRandomForest: {
        ForestState forest;
        for (const auto& t : s.at("trees")) forest.trees.push_back(tree_from_json(t));
        model.state = std::move(forest);
        break;
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace tunebench
