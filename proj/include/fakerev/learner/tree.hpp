#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakerev/matrix.hpp"

namespace fakerev {

/// Number of features examined per split.
struct MaxFeatures {
  enum class Kind { all, sqrt, count };
  Kind kind = Kind::all;
  std::size_t count = 0;

  /// floor(sqrt(d)) for sqrt, clamped to [1, d].
  std::size_t resolve(std::size_t n_features) const;
  std::string to_string() const;
  static MaxFeatures parse(std::string_view text);

  friend bool operator==(const MaxFeatures&, const MaxFeatures&) = default;
};

struct TreeParams {
  std::string criterion = "gini";
  std::optional<std::size_t> max_depth;
  MaxFeatures max_features;
  std::size_t min_samples_split = 2;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an unsupported criterion, max_depth 0 or
  /// min_samples_split below 2.
  void validate() const;
};

/// Flat binary tree. A node with feature < 0 is a leaf; internal nodes send
/// x[feature] <= threshold to `left`.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double score = 0.0;  // fake fraction of the training weight reaching the node

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class TreeModel {
 public:
  TreeModel() = default;
  TreeModel(std::vector<TreeNode> nodes, std::size_t n_features) : nodes_(std::move(nodes)), n_features_(n_features) {}

  double score(std::span<const double> x) const;
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t n_features() const noexcept { return n_features_; }

  /// Internal nodes per feature.
  std::vector<std::size_t> split_counts() const;

  friend bool operator==(const TreeModel&, const TreeModel&) = default;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t n_features_ = 0;
};

/// Gini impurity decrease of splitting a node of weight `total` (of which
/// `total_fake` fake) into a left part (`left`, `left_fake`) and the rest.
double gini_gain(double total, double total_fake, double left, double left_fake);

/// Gains within this margin count as ties, resolved towards the lower feature
/// index and then the lower threshold.
inline constexpr double kGainTieEpsilon = 1e-12;

/// Column-major copy of a feature matrix with, per feature, the row ids in
/// ascending value order. Built once and shared by every tree of a forest.
class SortedColumns {
 public:
  explicit SortedColumns(const FeatureMatrix& X);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double value(std::size_t row, std::size_t f) const { return values_[f * rows_ + row]; }
  std::span<const std::uint32_t> order(std::size_t f) const { return {order_.data() + f * rows_, rows_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<std::uint32_t> order_;
};

/// CART with Gini impurity and midpoint thresholds.
TreeModel train_tree(const FeatureMatrix& X, std::span<const std::uint8_t> y, const TreeParams& params);

/// Weighted variant used by the forest; `weights[i]` is the multiplicity of
/// row i (0 drops it). Feature subsets are drawn from `rng`.
TreeModel train_tree_weighted(const FeatureMatrix& X, std::span<const std::uint8_t> y,
                              std::span<const std::uint32_t> weights, const TreeParams& params, std::mt19937_64& rng);
TreeModel train_tree_weighted(const SortedColumns& columns, std::span<const std::uint8_t> y,
                              std::span<const std::uint32_t> weights, const TreeParams& params, std::mt19937_64& rng);

}  // namespace fakerev
