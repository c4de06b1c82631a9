#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fakerev/matrix.hpp"

namespace fakerev {

/// Gaussian naive Bayes over two classes (index 1 = fake).
struct NBModel {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> var;

  std::size_t n_features() const noexcept { return mean[0].size(); }

  /// log P(class) + sum of per-feature Gaussian log densities.
  std::array<double, 2> joint_log_likelihood(std::span<const double> x) const;

  /// Posterior probability of the fake class.
  double score(std::span<const double> x) const;
};

/// Variances are floored at 1e-9 times the largest feature variance of X.
NBModel train_gnb(const FeatureMatrix& X, std::span<const std::uint8_t> y);

}  // namespace fakerev
