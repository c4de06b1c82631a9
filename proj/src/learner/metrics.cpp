#include "fakerev/learner/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fakerev {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metrics metrics_from(const ConfusionMatrix& cm) {
  Metrics m;
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  if (m.precision && m.recall && *m.precision + *m.recall > 0.0)
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  return m;
}

std::pair<ConfusionMatrix, Metrics> evaluate(std::span<const std::uint8_t> y_true, std::span<const double> scores,
                                             double threshold) {
  if (y_true.size() != scores.size()) throw std::invalid_argument("evaluate: labels and scores differ in length");
  if (y_true.empty()) throw std::invalid_argument("evaluate: no samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (y_true[i]) {
      predicted ? ++cm.tp : ++cm.fn;
    } else {
      predicted ? ++cm.fp : ++cm.tn;
    }
  }
  return {cm, metrics_from(cm)};
}

double auc_roc(std::span<const std::uint8_t> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) throw std::invalid_argument("auc_roc: labels and scores differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of average ranks held by positives.
  double positive_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      if (y_true[order[k]]) {
        positive_rank_sum += avg;
        ++n_pos;
      }
    i = j + 1;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("auc_roc: both classes must be present");
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

}  // namespace fakerev
