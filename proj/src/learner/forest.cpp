#include "fakerev/learner/forest.hpp"

#include <stdexcept>

#include "fakerev/parallel.hpp"

namespace fakerev {

void ForestParams::validate() const {
  if (n_estimators < 1) throw std::invalid_argument("n_estimators must be at least 1");
  tree.validate();
}

double ForestModel::score(std::span<const double> x) const {
  if (trees_.empty()) throw std::invalid_argument("ForestModel: no trees");
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.score(x);
  return sum / static_cast<double>(trees_.size());
}

namespace {

void check_inputs(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ForestParams& params) {
  params.validate();
  if (X.rows() != y.size()) throw std::invalid_argument("train_forest: rows and labels differ");
  bool has_fake = false, has_regular = false;
  for (auto label : y) (label ? has_fake : has_regular) = true;
  if (!has_fake || !has_regular) throw std::invalid_argument("train_forest: both classes must be present");
}

TreeModel grow(const SortedColumns& X, std::span<const std::uint8_t> y, const ForestParams& params, std::size_t t) {
  auto rng = derive_engine(params.seed, {t});
  std::vector<std::uint32_t> weights(X.rows(), params.bootstrap ? 0u : 1u);
  if (params.bootstrap) {
    std::uniform_int_distribution<std::size_t> pick(0, X.rows() - 1);
    for (std::size_t i = 0; i < X.rows(); ++i) ++weights[pick(rng)];
  }
  return train_tree_weighted(X, y, weights, params.tree, rng);
}

}  // namespace

ForestModel train_forest(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ForestParams& params,
                         int workers) {
  check_inputs(X, y, params);
  const SortedColumns columns(X);
  std::vector<TreeModel> trees(params.n_estimators);
  parallel_for(params.n_estimators, workers, [&](std::size_t t) { trees[t] = grow(columns, y, params, t); });
  return ForestModel(std::move(trees));
}

ForestModel train_forest_serial(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ForestParams& params) {
  check_inputs(X, y, params);
  const SortedColumns columns(X);
  std::vector<TreeModel> trees;
  trees.reserve(params.n_estimators);
  for (std::size_t t = 0; t < params.n_estimators; ++t) trees.push_back(grow(columns, y, params, t));
  return ForestModel(std::move(trees));
}

}  // namespace fakerev
