#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fakerev/learner/tree.hpp"

namespace fakerev {

/// Tree settings a forest starts from: sqrt(d) candidate features per node.
inline TreeParams forest_tree_defaults() {
  TreeParams p;
  p.max_features = {MaxFeatures::Kind::sqrt, 0};
  return p;
}

struct ForestParams {
  std::size_t n_estimators = 100;
  TreeParams tree = forest_tree_defaults();
  bool bootstrap = true;
  std::uint64_t seed = 0;

  void validate() const;
};

class ForestModel {
 public:
  ForestModel() = default;
  explicit ForestModel(std::vector<TreeModel> trees) : trees_(std::move(trees)) {}

  /// Mean of the tree scores.
  double score(std::span<const double> x) const;
  const std::vector<TreeModel>& trees() const noexcept { return trees_; }
  std::size_t n_features() const noexcept { return trees_.empty() ? 0 : trees_.front().n_features(); }

  friend bool operator==(const ForestModel&, const ForestModel&) = default;

 private:
  std::vector<TreeModel> trees_;
};

/// Tree t draws its bootstrap sample and feature subsets from an engine
/// derived from (seed, t), so the model is identical for any worker count.
ForestModel train_forest(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ForestParams& params,
                         int workers = 0);

/// Single-threaded reference for train_forest.
ForestModel train_forest_serial(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ForestParams& params);

}  // namespace fakerev
