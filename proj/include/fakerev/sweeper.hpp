#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fakerev/learner/metrics.hpp"
#include "fakerev/learner/model.hpp"
#include "fakerev/learner/validation.hpp"
#include "fakerev/matrix.hpp"

namespace fakerev {

/// The 27 skews in percent: 90..10 by 10, 9..1 by 1, 0.9..0.1 by 0.1.
std::vector<double> skew_grid();

/// Regular samples needed so that n_fake makes up `skew_percent` percent of
/// the dataset, rounded half up. Skews are resolved to tenths of a percent.
std::size_t n_regular_for(std::size_t n_fake, double skew_percent);

struct SweepRow {
  double skew_percent = 0.0;
  std::string algorithm;
  Metrics metrics;  // fold means; empty when undefined in every fold
  std::size_t n_fake = 0;
  std::size_t n_regular = 0;
};

struct SweepConfig {
  std::vector<double> skews = skew_grid();
  std::vector<ModelSpec> algorithms;
  CVConfig cv;
  std::uint64_t seed = 0;
  int workers = 0;
};

/// Skews of the grid at or above `min_skew_percent`.
std::vector<double> skews_from(double min_skew_percent);

/// The pool is shuffled once; each skew uses a prefix of that order, so the
/// regular subsets nest. Cells of (skew, algorithm) run in parallel and rows
/// come back skew-major in config order.
std::vector<SweepRow> run_sweep(const FeatureMatrix& fakes, const FeatureMatrix& regular_pool,
                                const SweepConfig& config);

/// Single-threaded reference for run_sweep.
std::vector<SweepRow> run_sweep_serial(const FeatureMatrix& fakes, const FeatureMatrix& regular_pool,
                                       const SweepConfig& config);

/// Header: skew,algorithm,precision,recall,f1,auc,n_fake,n_regular
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace fakerev
