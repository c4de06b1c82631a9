#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakerev/learner/metrics.hpp"
#include "fakerev/learner/model.hpp"

namespace fakerev {

/// `fold` fits preprocessing on each training fold; `global` fits it once on
/// the whole dataset before splitting.
enum class PreprocessScope { fold, global };

std::string_view to_string(PreprocessScope scope);
PreprocessScope parse_preprocess_scope(std::string_view text);

struct CVConfig {
  std::size_t folds = 10;
  std::size_t repeats = 30;
  std::uint64_t seed = 0;
  PreprocessScope scope = PreprocessScope::fold;
  Preprocessing prep;
  int workers = 0;

  void validate() const;
};

/// Fold id in [0, k) for every row. Each class is shuffled with an engine
/// derived from (seed, repeat) and dealt round-robin, so every fold holds
/// floor or ceil of n_c / k rows of class c.
std::vector<std::size_t> stratified_folds(std::span<const std::uint8_t> y, std::size_t k, std::uint64_t seed,
                                          std::size_t repeat);

struct FoldResult {
  std::size_t repeat = 0;
  std::size_t fold = 0;
  ConfusionMatrix confusion;
  Metrics metrics;

  friend bool operator==(const FoldResult&, const FoldResult&) = default;
};

/// Mean and sample sd over the folds where the metric is defined.
struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> sd;
  std::size_t defined = 0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct CVResult {
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  MetricSummary accuracy;
  MetricSummary auc_roc;
  std::vector<FoldResult> folds;  // repeat-major, fold-minor

  friend bool operator==(const CVResult&, const CVResult&) = default;
};

/// Repeated stratified k-fold. Units of (repeat, fold) run in parallel, each
/// with a model seed derived from (seed, repeat, fold).
CVResult cross_validate(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec,
                        const CVConfig& cv);

/// Single-threaded reference for cross_validate.
CVResult cross_validate_serial(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec,
                               const CVConfig& cv);

enum class Scoring { precision, recall, f1, accuracy, auc };

std::string_view to_string(Scoring scoring);
Scoring parse_scoring(std::string_view text);
const MetricSummary& summary_for(const CVResult& result, Scoring scoring);

struct RfecvStep {
  std::vector<std::size_t> features;  // ascending original column ids
  std::optional<double> score;
  std::optional<double> score_sd;
};

struct RfecvResult {
  std::vector<std::size_t> selected;
  std::optional<double> best_score;
  std::vector<RfecvStep> curve;  // from d features down to 1
};

/// Backward elimination: score the current set by CV, refit on all rows and
/// drop the feature with the lowest split-count importance (lowest column id
/// among ties). Selects the smallest set scoring within `tolerance` of the
/// best. Throws for naive Bayes.
RfecvResult rfecv(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec, const CVConfig& cv,
                  Scoring scoring = Scoring::precision, double tolerance = 0.005);

struct ParamGrid {
  std::vector<std::size_t> n_estimators;
  std::vector<std::optional<std::size_t>> max_depth;  // nullopt = unlimited
  std::vector<MaxFeatures> max_features;
  std::vector<std::string> criterion;
};

/// n_estimators {100, 300, 500} x max_depth {10, 30, none} x
/// max_features {sqrt, all} x criterion {gini}.
ParamGrid default_grid();

/// Every combination, ordered by the tie-break preference: fewer trees,
/// shallower depth (unlimited last), then max_features and criterion names.
std::vector<ForestParams> expand(const ParamGrid& grid);

struct GridRow {
  ForestParams params;
  CVResult result;
};

struct GridResult {
  ForestParams best;
  std::optional<double> best_score;
  std::vector<GridRow> table;  // in expand() order
};

/// Exhaustive CV over forest configurations. The first configuration in
/// expand() order with the highest defined score wins.
GridResult grid_search(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ParamGrid& grid,
                       const CVConfig& cv, Scoring scoring = Scoring::precision);

}  // namespace fakerev
