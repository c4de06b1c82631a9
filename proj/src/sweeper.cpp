#include "fakerev/sweeper.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fakerev/csv.hpp"
#include "fakerev/parallel.hpp"

namespace fakerev {

namespace {

std::vector<int> skew_tenths() {
  std::vector<int> out;
  for (int t = 900; t >= 100; t -= 100) out.push_back(t);
  for (int t = 90; t >= 10; t -= 10) out.push_back(t);
  for (int t = 9; t >= 1; --t) out.push_back(t);
  return out;
}

long to_tenths(double skew_percent) {
  const double scaled = skew_percent * 10.0;
  const long t = std::lround(scaled);
  if (!(std::abs(scaled - static_cast<double>(t)) < 1e-6) || t < 1 || t > 999)
    throw std::invalid_argument("skew must be a multiple of 0.1 percent in (0, 100)");
  return t;
}

}  // namespace

std::vector<double> skew_grid() {
  std::vector<double> out;
  for (int t : skew_tenths()) out.push_back(t / 10.0);
  return out;
}

std::vector<double> skews_from(double min_skew_percent) {
  std::vector<double> out;
  for (int t : skew_tenths())
    if (t / 10.0 >= min_skew_percent - 1e-9) out.push_back(t / 10.0);
  return out;
}

std::size_t n_regular_for(std::size_t n_fake, double skew_percent) {
  const auto t = static_cast<std::size_t>(to_tenths(skew_percent));
  return (2 * n_fake * (1000 - t) + t) / (2 * t);
}

namespace {

class Sweep {
 public:
  Sweep(const FeatureMatrix& fakes, const FeatureMatrix& pool, const SweepConfig& config) : config_(config) {
    if (config.algorithms.empty()) throw std::invalid_argument("run_sweep: no algorithms given");
    if (config.skews.empty()) throw std::invalid_argument("run_sweep: no skews given");
    if (fakes.rows() == 0) throw std::invalid_argument("run_sweep: no fake samples");
    if (fakes.cols() != pool.cols()) throw std::invalid_argument("run_sweep: fake and regular widths differ");
    std::size_t required = 0;
    for (double s : config.skews) required = std::max(required, n_regular_for(fakes.rows(), s));
    if (pool.rows() < required)
      throw std::invalid_argument("run_sweep: regular pool holds " + std::to_string(pool.rows()) +
                                  " samples but the skews need " + std::to_string(required));

    std::vector<std::size_t> order(pool.rows());
    std::iota(order.begin(), order.end(), 0);
    auto rng = derive_engine(config.seed, {0});
    std::shuffle(order.begin(), order.end(), rng);

    for (double s : config.skews) {
      const std::size_t n_regular = n_regular_for(fakes.rows(), s);
      Cell base{s, fakes.rows(), n_regular, fakes, {}};
      const std::span<const std::size_t> prefix(order.data(), n_regular);
      for (std::size_t r : prefix) base.X.append_row(pool.row(r));
      base.y.assign(fakes.rows(), 1);
      base.y.resize(fakes.rows() + n_regular, 0);
      data_.push_back(std::move(base));
    }
    rows_.resize(units());
  }

  std::size_t units() const { return data_.size() * config_.algorithms.size(); }

  void run_unit(std::size_t u) {
    const std::size_t s = u / config_.algorithms.size(), a = u % config_.algorithms.size();
    const auto& cell = data_[s];
    CVConfig cv = config_.cv;
    cv.seed = derive_engine(config_.seed, {1, s})();
    cv.workers = 1;
    const auto& spec = config_.algorithms[a];
    const CVResult result = cross_validate_serial(cell.X, cell.y, spec, cv);
    SweepRow row;
    row.skew_percent = cell.skew;
    row.algorithm = std::string(to_string(spec.algorithm));
    row.metrics.precision = result.precision.mean;
    row.metrics.recall = result.recall.mean;
    row.metrics.f1 = result.f1.mean;
    row.metrics.accuracy = result.accuracy.mean;
    row.metrics.auc_roc = result.auc_roc.mean;
    row.n_fake = cell.n_fake;
    row.n_regular = cell.n_regular;
    rows_[u] = std::move(row);
  }

  std::vector<SweepRow> finish() && { return std::move(rows_); }

 private:
  struct Cell {
    double skew;
    std::size_t n_fake;
    std::size_t n_regular;
    FeatureMatrix X;
    Labels y;
  };

  const SweepConfig& config_;
  std::vector<Cell> data_;
  std::vector<SweepRow> rows_;
};

}  // namespace

std::vector<SweepRow> run_sweep(const FeatureMatrix& fakes, const FeatureMatrix& regular_pool,
                                const SweepConfig& config) {
  Sweep sweep(fakes, regular_pool, config);
  parallel_for(sweep.units(), config.workers, [&](std::size_t u) { sweep.run_unit(u); });
  return std::move(sweep).finish();
}

std::vector<SweepRow> run_sweep_serial(const FeatureMatrix& fakes, const FeatureMatrix& regular_pool,
                                       const SweepConfig& config) {
  Sweep sweep(fakes, regular_pool, config);
  for (std::size_t u = 0; u < sweep.units(); ++u) sweep.run_unit(u);
  return std::move(sweep).finish();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "skew,algorithm,precision,recall,f1,auc,n_fake,n_regular\n";
  for (const auto& r : rows) {
    out << csv::number(r.skew_percent) << ',' << csv::field(r.algorithm) << ',' << csv::number(r.metrics.precision)
        << ',' << csv::number(r.metrics.recall) << ',' << csv::number(r.metrics.f1) << ','
        << csv::number(r.metrics.auc_roc) << ',' << r.n_fake << ',' << r.n_regular << '\n';
  }
}

}  // namespace fakerev
