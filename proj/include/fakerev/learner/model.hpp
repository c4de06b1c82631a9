#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fakerev/featurizer.hpp"
#include "fakerev/learner/forest.hpp"
#include "fakerev/learner/naive_bayes.hpp"
#include "fakerev/learner/tree.hpp"

namespace fakerev {

enum class Algorithm { gnb, tree, forest };

std::string_view to_string(Algorithm algorithm);
/// Accepts gnb|nb, dt|tree, rf|forest.
Algorithm parse_algorithm(std::string_view text);

struct ModelSpec {
  Algorithm algorithm = Algorithm::forest;
  TreeParams tree;      // used by Algorithm::tree
  ForestParams forest;  // used by Algorithm::forest

  static ModelSpec gnb() { return {Algorithm::gnb, {}, {}}; }
  static ModelSpec decision_tree(TreeParams p = {}) { return {Algorithm::tree, std::move(p), {}}; }
  static ModelSpec random_forest(ForestParams p = {}) { return {Algorithm::forest, {}, std::move(p)}; }

  /// Same spec reseeded for one unit of work.
  ModelSpec reseeded(std::uint64_t seed) const;
};

using Model = std::variant<NBModel, TreeModel, ForestModel>;

Model train(const ModelSpec& spec, const FeatureMatrix& X, std::span<const std::uint8_t> y, int workers = 1);

/// Probability-like score of the fake class for every row.
std::vector<double> predict_score(const Model& model, const FeatureMatrix& X);

std::size_t n_features(const Model& model);

struct Importance {
  std::vector<double> values;  // sums to 1 when defined
  bool defined = false;        // false for a model made of leaves only
};

/// Share of internal split nodes using each feature, pooled over all trees.
Importance feature_importance(const TreeModel& model);
Importance feature_importance(const ForestModel& model);
/// Throws std::invalid_argument for naive Bayes, which has no importances.
Importance feature_importance(const Model& model);

/// Per-sample unit-norm scaling followed by per-feature standardization.
struct Preprocessing {
  bool normalize_rows = true;
  bool standardize = true;
};

/// A model together with the preprocessing fitted on its training data.
struct TrainedModel {
  Model model;
  Preprocessing preprocessing;
  std::optional<ScalerState> scaler;
  std::vector<std::string> feature_names;
};

/// Applies row normalization (if enabled) and then the fitted scaler.
FeatureMatrix apply_preprocessing(const FeatureMatrix& X, const Preprocessing& prep, const ScalerState* scaler);

TrainedModel fit_pipeline(const ModelSpec& spec, const FeatureMatrix& X, std::span<const std::uint8_t> y,
                          const Preprocessing& prep, int workers = 1);
std::vector<double> predict_score(const TrainedModel& trained, const FeatureMatrix& X);

inline constexpr std::string_view kModelFormat = "fakerev-model";
inline constexpr int kModelFormatVersion = 1;

/// JSON document tagged with kModelFormat and kModelFormatVersion.
std::string serialize(const TrainedModel& trained);
TrainedModel deserialize(std::string_view json_text);
void save_model(const std::filesystem::path& path, const TrainedModel& trained);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace fakerev
