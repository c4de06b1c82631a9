#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace fakerev {

/// Fake is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// An empty optional marks an undefined value (a 0/0 ratio). Undefined
/// values are never reported as zero.
struct Metrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> accuracy;
  std::optional<double> auc_roc;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics metrics_from(const ConfusionMatrix& cm);

/// Predicts fake when score >= threshold. AUC is left empty.
std::pair<ConfusionMatrix, Metrics> evaluate(std::span<const std::uint8_t> y_true, std::span<const double> scores,
                                             double threshold = 0.5);

/// Mann-Whitney form of the ROC area: P(fake scored above regular) plus half
/// the probability of a tie. Throws if either class is absent.
double auc_roc(std::span<const std::uint8_t> y_true, std::span<const double> scores);

}  // namespace fakerev
