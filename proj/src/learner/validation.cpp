#include "fakerev/learner/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "fakerev/parallel.hpp"

namespace fakerev {

std::string_view to_string(PreprocessScope scope) { return scope == PreprocessScope::fold ? "fold" : "global"; }

PreprocessScope parse_preprocess_scope(std::string_view text) {
  if (text == "fold") return PreprocessScope::fold;
  if (text == "global") return PreprocessScope::global;
  throw std::invalid_argument("preprocess scope must be 'fold' or 'global'");
}

void CVConfig::validate() const {
  if (folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
}

std::vector<std::size_t> stratified_folds(std::span<const std::uint8_t> y, std::size_t k, std::uint64_t seed,
                                          std::size_t repeat) {
  if (k < 1) throw std::invalid_argument("stratified_folds: k must be positive");
  auto rng = derive_engine(seed, {0, repeat});
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i] ? 1 : 0].push_back(i);
  std::vector<std::size_t> fold(y.size());
  std::size_t offset = 0;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t p = 0; p < members.size(); ++p) fold[members[p]] = (offset + p) % k;
    offset = (offset + members.size()) % k;
  }
  return fold;
}

namespace {

void check_cv_inputs(const FeatureMatrix& X, std::span<const std::uint8_t> y, const CVConfig& cv) {
  cv.validate();
  if (X.rows() != y.size()) throw std::invalid_argument("cross_validate: rows and labels differ");
  const auto fakes = static_cast<std::size_t>(std::count_if(y.begin(), y.end(), [](auto v) { return v != 0; }));
  const auto regulars = y.size() - fakes;
  if (fakes < cv.folds || regulars < cv.folds)
    throw std::invalid_argument("cross_validate: each class needs at least " + std::to_string(cv.folds) +
                                " samples (fake " + std::to_string(fakes) + ", regular " + std::to_string(regulars) +
                                ")");
}

FeatureMatrix preprocess_globally(const FeatureMatrix& X, const Preprocessing& prep) {
  FeatureMatrix out = prep.normalize_rows ? normalize_rows(X) : X;
  if (prep.standardize) out = fit_scaler(out).transform(out);
  return out;
}

class CVRun {
 public:
  CVRun(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec, const CVConfig& cv)
      : X_(X), y_(y), spec_(spec), cv_(cv) {
    check_cv_inputs(X, y, cv);
    if (cv.scope == PreprocessScope::global) {
      global_ = preprocess_globally(X, cv.prep);
      source_ = &global_;
    } else {
      source_ = &X_;
    }
    for (std::size_t r = 0; r < cv.repeats; ++r) assignments_.push_back(stratified_folds(y, cv.folds, cv.seed, r));
    results_.resize(units());
  }

  std::size_t units() const { return cv_.folds * cv_.repeats; }

  void run_unit(std::size_t u) {
    const std::size_t r = u / cv_.folds, f = u % cv_.folds;
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < y_.size(); ++i) (assignments_[r][i] == f ? test_rows : train_rows).push_back(i);
    const FeatureMatrix x_train = source_->select_rows(train_rows);
    const FeatureMatrix x_test = source_->select_rows(test_rows);
    const Labels y_train = select<std::uint8_t>(y_, train_rows);
    const Labels y_test = select<std::uint8_t>(y_, test_rows);

    const ModelSpec spec = spec_.reseeded(derive_engine(cv_.seed, {1, r, f})());
    std::vector<double> scores;
    if (cv_.scope == PreprocessScope::fold) {
      scores = predict_score(fit_pipeline(spec, x_train, y_train, cv_.prep, 1), x_test);
    } else {
      scores = predict_score(train(spec, x_train, y_train, 1), x_test);
    }
    auto [cm, metrics] = evaluate(y_test, scores);
    metrics.auc_roc = auc_roc(y_test, scores);
    results_[u] = {r, f, cm, metrics};
  }

  CVResult finish() &&;

 private:
  const FeatureMatrix& X_;
  std::span<const std::uint8_t> y_;
  const ModelSpec& spec_;
  const CVConfig& cv_;
  FeatureMatrix global_;
  const FeatureMatrix* source_ = nullptr;
  std::vector<std::vector<std::size_t>> assignments_;
  std::vector<FoldResult> results_;
};

MetricSummary summarize(const std::vector<FoldResult>& folds, std::optional<double> Metrics::*field) {
  std::vector<double> values;
  for (const auto& f : folds)
    if (const auto& v = f.metrics.*field) values.push_back(*v);
  MetricSummary s;
  s.defined = values.size();
  if (values.empty()) return s;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

CVResult CVRun::finish() && {
  CVResult out;
  out.folds = std::move(results_);
  out.precision = summarize(out.folds, &Metrics::precision);
  out.recall = summarize(out.folds, &Metrics::recall);
  out.f1 = summarize(out.folds, &Metrics::f1);
  out.accuracy = summarize(out.folds, &Metrics::accuracy);
  out.auc_roc = summarize(out.folds, &Metrics::auc_roc);
  return out;
}

}  // namespace

CVResult cross_validate(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec,
                        const CVConfig& cv) {
  CVRun run(X, y, spec, cv);
  parallel_for(run.units(), cv.workers, [&](std::size_t u) { run.run_unit(u); });
  return std::move(run).finish();
}

CVResult cross_validate_serial(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec,
                               const CVConfig& cv) {
  CVRun run(X, y, spec, cv);
  for (std::size_t u = 0; u < run.units(); ++u) run.run_unit(u);
  return std::move(run).finish();
}

std::string_view to_string(Scoring scoring) {
  switch (scoring) {
    case Scoring::precision: return "precision";
    case Scoring::recall: return "recall";
    case Scoring::f1: return "f1";
    case Scoring::accuracy: return "accuracy";
    case Scoring::auc: return "auc";
  }
  return "precision";
}

Scoring parse_scoring(std::string_view text) {
  if (text == "precision") return Scoring::precision;
  if (text == "recall") return Scoring::recall;
  if (text == "f1") return Scoring::f1;
  if (text == "accuracy") return Scoring::accuracy;
  if (text == "auc" || text == "roc_auc") return Scoring::auc;
  throw std::invalid_argument("unknown scoring '" + std::string(text) + "'");
}

const MetricSummary& summary_for(const CVResult& result, Scoring scoring) {
  switch (scoring) {
    case Scoring::precision: return result.precision;
    case Scoring::recall: return result.recall;
    case Scoring::f1: return result.f1;
    case Scoring::accuracy: return result.accuracy;
    case Scoring::auc: return result.auc_roc;
  }
  return result.precision;
}

RfecvResult rfecv(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ModelSpec& spec, const CVConfig& cv,
                  Scoring scoring, double tolerance) {
  if (spec.algorithm == Algorithm::gnb)
    throw std::invalid_argument("rfecv: naive Bayes models have no feature importances");
  if (X.cols() < 2) throw std::invalid_argument("rfecv: at least 2 features are required");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("rfecv: tolerance must be non-negative");

  RfecvResult out;
  std::vector<std::size_t> current(X.cols());
  std::iota(current.begin(), current.end(), 0);
  for (std::size_t step = 0;; ++step) {
    const FeatureMatrix sub = X.select_cols(current);
    const auto result = cross_validate(sub, y, spec, cv);
    const auto& summary = summary_for(result, scoring);
    out.curve.push_back({current, summary.mean, summary.sd});
    if (current.size() == 1) break;

    const auto fitted = fit_pipeline(spec.reseeded(derive_engine(cv.seed, {2, step})()), sub, y, cv.prep, cv.workers);
    const auto importance = feature_importance(fitted.model);
    const auto weakest = std::min_element(importance.values.begin(), importance.values.end());
    current.erase(current.begin() + (weakest - importance.values.begin()));
  }

  for (const auto& s : out.curve)
    if (s.score && (!out.best_score || *s.score > *out.best_score)) out.best_score = s.score;
  if (!out.best_score) {
    out.selected = out.curve.front().features;
    return out;
  }
  for (const auto& s : out.curve)
    if (s.score && *s.score >= *out.best_score - tolerance) out.selected = s.features;
  return out;
}

ParamGrid default_grid() {
  return {{100, 300, 500},
          {std::size_t{10}, std::size_t{30}, std::nullopt},
          {MaxFeatures{MaxFeatures::Kind::sqrt, 0}, MaxFeatures{MaxFeatures::Kind::all, 0}},
          {"gini"}};
}

std::vector<ForestParams> expand(const ParamGrid& grid) {
  if (grid.n_estimators.empty() || grid.max_depth.empty() || grid.max_features.empty() || grid.criterion.empty())
    throw std::invalid_argument("grid_search: every grid dimension needs at least one value");
  std::vector<ForestParams> out;
  for (auto n : grid.n_estimators)
    for (const auto& depth : grid.max_depth)
      for (const auto& mf : grid.max_features)
        for (const auto& criterion : grid.criterion) {
          ForestParams p;
          p.n_estimators = n;
          p.tree.max_depth = depth;
          p.tree.max_features = mf;
          p.tree.criterion = criterion;
          p.validate();
          out.push_back(p);
        }
  auto key = [](const ForestParams& p) {
    return std::make_tuple(p.n_estimators, p.tree.max_depth.value_or(std::numeric_limits<std::size_t>::max()),
                           p.tree.max_features.to_string(), p.tree.criterion);
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

GridResult grid_search(const FeatureMatrix& X, std::span<const std::uint8_t> y, const ParamGrid& grid,
                       const CVConfig& cv, Scoring scoring) {
  GridResult out;
  for (const auto& params : expand(grid)) {
    out.table.push_back({params, cross_validate(X, y, ModelSpec::random_forest(params), cv)});
    const auto& score = summary_for(out.table.back().result, scoring).mean;
    if (out.table.size() == 1 || (score && (!out.best_score || *score > *out.best_score))) {
      out.best = params;
      out.best_score = score;
    }
  }
  return out;
}

}  // namespace fakerev
