#include "fakerev/learner/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fakerev {

std::array<double, 2> NBModel::joint_log_likelihood(std::span<const double> x) const {
  if (x.size() != n_features()) throw std::invalid_argument("NBModel: feature dimension mismatch");
  std::array<double, 2> jll = log_prior;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double diff = x[j] - mean[c][j];
      jll[c] -= 0.5 * std::log(2.0 * std::numbers::pi * var[c][j]) + diff * diff / (2.0 * var[c][j]);
    }
  return jll;
}

double NBModel::score(std::span<const double> x) const {
  const auto jll = joint_log_likelihood(x);
  // P(fake) = 1 / (1 + exp(jll0 - jll1)), evaluated without overflow.
  const double delta = jll[0] - jll[1];
  if (delta > 0.0) {
    const double e = std::exp(-delta);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(delta));
}

NBModel train_gnb(const FeatureMatrix& X, std::span<const std::uint8_t> y) {
  if (X.rows() != y.size()) throw std::invalid_argument("train_gnb: rows and labels differ");
  const std::size_t d = X.cols();
  std::array<std::size_t, 2> count{};
  for (auto label : y) ++count[label ? 1 : 0];
  if (count[0] == 0 || count[1] == 0) throw std::invalid_argument("train_gnb: both classes must be present");

  NBModel m;
  for (std::size_t c = 0; c < 2; ++c) {
    m.mean[c].assign(d, 0.0);
    m.var[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < d; ++j) m.mean[y[i] ? 1 : 0][j] += X(i, j);
  for (std::size_t c = 0; c < 2; ++c)
    for (auto& v : m.mean[c]) v /= static_cast<double>(count[c]);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const std::size_t c = y[i] ? 1 : 0;
    for (std::size_t j = 0; j < d; ++j) m.var[c][j] += (X(i, j) - m.mean[c][j]) * (X(i, j) - m.mean[c][j]);
  }
  for (std::size_t c = 0; c < 2; ++c)
    for (auto& v : m.var[c]) v /= static_cast<double>(count[c]);

  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mu = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) mu += X(i, j);
    mu /= static_cast<double>(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) ss += (X(i, j) - mu) * (X(i, j) - mu);
    max_var = std::max(max_var, ss / static_cast<double>(X.rows()));
  }
  const double floor = max_var > 0.0 ? 1e-9 * max_var : 1e-9;
  for (std::size_t c = 0; c < 2; ++c)
    for (auto& v : m.var[c]) v = std::max(v, floor);

  const double n = static_cast<double>(X.rows());
  m.log_prior = {std::log(static_cast<double>(count[0]) / n), std::log(static_cast<double>(count[1]) / n)};
  return m;
}

}  // namespace fakerev
