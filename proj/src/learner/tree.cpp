#include "fakerev/learner/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fakerev {

std::size_t MaxFeatures::resolve(std::size_t d) const {
  if (d == 0) return 0;
  switch (kind) {
    case Kind::all: return d;
    case Kind::sqrt: return std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))), 1, d);
    case Kind::count: return std::clamp<std::size_t>(count, 1, d);
  }
  return d;
}

std::string MaxFeatures::to_string() const {
  switch (kind) {
    case Kind::all: return "all";
    case Kind::sqrt: return "sqrt";
    case Kind::count: return std::to_string(count);
  }
  return "all";
}

MaxFeatures MaxFeatures::parse(std::string_view text) {
  if (text == "all") return {Kind::all, 0};
  if (text == "sqrt") return {Kind::sqrt, 0};
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
    throw std::invalid_argument("max_features must be 'all', 'sqrt' or a positive integer");
  return {Kind::count, value};
}

void TreeParams::validate() const {
  if (criterion != "gini") throw std::invalid_argument("unsupported split criterion '" + criterion + "'");
  if (max_depth && *max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  if (min_samples_split < 2) throw std::invalid_argument("min_samples_split must be at least 2");
}

double TreeModel::score(std::span<const double> x) const {
  if (x.size() != n_features_) throw std::invalid_argument("TreeModel: feature dimension mismatch");
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes_[i].score;
}

std::vector<std::size_t> TreeModel::split_counts() const {
  std::vector<std::size_t> counts(n_features_, 0);
  for (const auto& n : nodes_)
    if (n.feature >= 0) ++counts[static_cast<std::size_t>(n.feature)];
  return counts;
}

double gini_gain(double total, double total_fake, double left, double left_fake) {
  auto gini = [](double w, double wf) {
    if (w <= 0.0) return 0.0;
    const double p = wf / w;
    return 1.0 - (p * p + (1.0 - p) * (1.0 - p));
  };
  const double right = total - left;
  const double right_fake = total_fake - left_fake;
  return gini(total, total_fake) - left / total * gini(left, left_fake) - right / total * gini(right, right_fake);
}

SortedColumns::SortedColumns(const FeatureMatrix& X) : rows_(X.rows()), cols_(X.cols()) {
  if (rows_ > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("too many rows for a tree");
  values_.resize(rows_ * cols_);
  order_.resize(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t f = 0; f < cols_; ++f) values_[f * rows_ + i] = X(i, f);
  for (std::size_t f = 0; f < cols_; ++f) {
    auto first = order_.begin() + static_cast<std::ptrdiff_t>(f * rows_);
    std::iota(first, first + static_cast<std::ptrdiff_t>(rows_), 0u);
    const double* col = values_.data() + f * rows_;
    std::stable_sort(first, first + static_cast<std::ptrdiff_t>(rows_),
                     [col](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
  }
}

namespace {

struct Split {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double gain = -std::numeric_limits<double>::infinity();
};

// Every node owns the same range [begin, end) in each feature's row list,
// and each list keeps its rows in ascending feature order. Splitting a node
// stably partitions all lists, so no node ever sorts.
class Builder {
 public:
  Builder(const SortedColumns& cols, std::span<const std::uint8_t> y, std::span<const std::uint32_t> weights,
          const TreeParams& params, std::mt19937_64* rng)
      : cols_(cols), y_(y), w_(weights), params_(params), rng_(rng), d_(cols.cols()),
        k_(params.max_features.resolve(cols.cols())) {
    for (std::size_t i = 0; i < cols.rows(); ++i)
      if (w_.empty() || w_[i] > 0) ++m_;
    sorted_.resize(d_ * m_);
    for (std::size_t f = 0; f < d_; ++f) {
      std::size_t pos = f * m_;
      for (auto r : cols.order(f))
        if (w_.empty() || w_[r] > 0) sorted_[pos++] = r;
    }
    goes_left_.assign(cols.rows(), 0);
    buffer_.resize(m_);
    perm_.resize(d_);
  }

  TreeModel build() {
    if (m_ == 0) throw std::invalid_argument("train_tree: no samples");
    struct Task {
      std::size_t node, begin, end, depth;
    };
    nodes_.emplace_back();
    std::vector<Task> stack{{0, 0, m_, 0}};
    while (!stack.empty()) {
      const Task t = stack.back();
      stack.pop_back();
      double total = 0.0, fake = 0.0;
      for (std::size_t i = t.begin; i < t.end; ++i) {
        const auto r = sorted_[i];
        const double w = weight(r);
        total += w;
        if (y_[r]) fake += w;
      }
      nodes_[t.node].score = fake / total;

      const bool pure = fake == 0.0 || fake == total;
      const bool depth_reached = params_.max_depth && t.depth >= *params_.max_depth;
      if (pure || depth_reached || t.end - t.begin < params_.min_samples_split) continue;

      const Split split = best_split(t.begin, t.end, total, fake);
      if (split.feature < 0) continue;

      const std::size_t mid = partition(t.begin, t.end, split);
      const auto left = nodes_.size();
      nodes_.emplace_back();
      nodes_.emplace_back();
      auto& node = nodes_[t.node];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = static_cast<std::int32_t>(left);
      node.right = static_cast<std::int32_t>(left + 1);
      stack.push_back({left + 1, mid, t.end, t.depth + 1});
      stack.push_back({left, t.begin, mid, t.depth + 1});
    }
    return TreeModel(std::move(nodes_), d_);
  }

 private:
  double weight(std::uint32_t row) const { return w_.empty() ? 1.0 : static_cast<double>(w_[row]); }
  const std::uint32_t* list(std::size_t f) const { return sorted_.data() + f * m_; }

  bool constant(std::size_t f, std::size_t begin, std::size_t end) const {
    return cols_.value(list(f)[begin], f) == cols_.value(list(f)[end - 1], f);
  }

  // Features to evaluate: every feature when k = d, otherwise the first k
  // non-constant features of a random permutation. Ascending order.
  std::vector<std::size_t> candidates(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> chosen;
    if (k_ >= d_ || rng_ == nullptr) {
      chosen.resize(d_);
      std::iota(chosen.begin(), chosen.end(), 0);
      return chosen;
    }
    std::iota(perm_.begin(), perm_.end(), 0);
    for (std::size_t t = 0; t < d_ && chosen.size() < k_; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, d_ - 1);
      std::swap(perm_[t], perm_[pick(*rng_)]);
      if (!constant(perm_[t], begin, end)) chosen.push_back(perm_[t]);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  Split best_split(std::size_t begin, std::size_t end, double total, double fake) {
    Split best;
    for (std::size_t f : candidates(begin, end)) {
      const std::uint32_t* rows = list(f);
      double left = 0.0, left_fake = 0.0;
      double v = cols_.value(rows[begin], f);
      for (std::size_t i = begin; i + 1 < end; ++i) {
        const auto r = rows[i];
        const double w = weight(r);
        left += w;
        if (y_[r]) left_fake += w;
        const double next = cols_.value(rows[i + 1], f);
        if (v < next) {
          const double gain = gini_gain(total, fake, left, left_fake);
          if (gain > best.gain + kGainTieEpsilon) {
            double threshold = v / 2.0 + next / 2.0;
            if (!(threshold < next) || std::isinf(threshold)) threshold = v;
            best = {static_cast<std::int32_t>(f), threshold, gain};
          }
        }
        v = next;
      }
    }
    return best;
  }

  // Stable partition of every feature list; returns the first right position.
  std::size_t partition(std::size_t begin, std::size_t end, const Split& split) {
    const auto sf = static_cast<std::size_t>(split.feature);
    std::size_t n_left = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto r = list(sf)[i];
      const bool left = cols_.value(r, sf) <= split.threshold;
      goes_left_[r] = left;
      n_left += left;
    }
    for (std::size_t f = 0; f < d_; ++f) {
      std::uint32_t* rows = sorted_.data() + f * m_;
      std::size_t l = begin, b = 0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto r = rows[i];
        if (goes_left_[r]) rows[l++] = r;
        else buffer_[b++] = r;
      }
      std::copy(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(b), rows + l);
    }
    return begin + n_left;
  }

  const SortedColumns& cols_;
  std::span<const std::uint8_t> y_;
  std::span<const std::uint32_t> w_;
  const TreeParams& params_;
  std::mt19937_64* rng_;
  std::size_t d_;
  std::size_t k_;
  std::size_t m_ = 0;
  std::vector<std::uint32_t> sorted_;  // d lists of m row ids
  std::vector<std::uint8_t> goes_left_;
  std::vector<std::uint32_t> buffer_;
  std::vector<std::size_t> perm_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

TreeModel train_tree(const FeatureMatrix& X, std::span<const std::uint8_t> y, const TreeParams& params) {
  params.validate();
  if (X.rows() != y.size()) throw std::invalid_argument("train_tree: rows and labels differ");
  std::mt19937_64 rng(params.seed);
  return Builder(SortedColumns(X), y, {}, params, &rng).build();
}

TreeModel train_tree_weighted(const FeatureMatrix& X, std::span<const std::uint8_t> y,
                              std::span<const std::uint32_t> weights, const TreeParams& params, std::mt19937_64& rng) {
  return train_tree_weighted(SortedColumns(X), y, weights, params, rng);
}

TreeModel train_tree_weighted(const SortedColumns& columns, std::span<const std::uint8_t> y,
                              std::span<const std::uint32_t> weights, const TreeParams& params, std::mt19937_64& rng) {
  params.validate();
  if (columns.rows() != y.size() || columns.rows() != weights.size())
    throw std::invalid_argument("train_tree_weighted: rows, labels and weights differ");
  return Builder(columns, y, weights, params, &rng).build();
}

}  // namespace fakerev
